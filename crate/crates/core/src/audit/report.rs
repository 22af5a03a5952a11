use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;
use serde_json::{json, Value};

/// Slack for floating-point comparisons; closer sides are a boundary case.
pub const MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check's hypothesis does not hold for this graph.
    Vacuous,
    /// Floating-point sides within [`MARGIN`]; neither pass nor fail.
    Boundary,
    /// Evaluated and recorded but never part of the aggregate verdict.
    ReportOnly,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Vacuous => "vacuous",
            CheckStatus::Boundary => "boundary",
            CheckStatus::ReportOnly => "report_only",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Eq => "=",
        }
    }

    /// Exact comparison of integer sides.
    pub fn exact(&self, lhs: i128, rhs: i128) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    /// Comparison of real sides; `None` when they are within [`MARGIN`].
    pub fn approx(&self, lhs: f64, rhs: f64) -> Option<bool> {
        if (lhs - rhs).abs() < MARGIN {
            return match self {
                Relation::Eq => Some(true),
                _ => None,
            };
        }
        Some(match self {
            Relation::Le | Relation::Lt => lhs < rhs,
            Relation::Ge | Relation::Gt => lhs > rhs,
            Relation::Eq => false,
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CheckDetail {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<Relation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<f64>,
    /// Truth of the inequality; `None` for boundary cases and vacuous checks.
    pub holds: Option<bool>,
    /// Vertex at which the reported sides were evaluated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    /// Path, cycle or vertex list backing the verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: CheckStatus,
    /// Whether a failure counts against the aggregate verdict.
    pub hard: bool,
    pub detail: CheckDetail,
}

impl CheckEntry {
    /// Entry for an evaluated inequality. Hard checks map the outcome to
    /// pass/fail/boundary; soft ones are always report-only.
    pub(crate) fn evaluated(name: &str, hard: bool, lhs: f64, relation: Relation, rhs: f64, holds: Option<bool>) -> Self {
        let status = match (hard, holds) {
            (false, _) => CheckStatus::ReportOnly,
            (true, Some(true)) => CheckStatus::Pass,
            (true, Some(false)) => CheckStatus::Fail,
            (true, None) => CheckStatus::Boundary,
        };
        CheckEntry {
            name: name.to_string(),
            status,
            hard,
            detail: CheckDetail {
                lhs: Some(lhs),
                relation: Some(relation),
                rhs: Some(rhs),
                holds,
                ..Default::default()
            },
        }
    }

    pub(crate) fn exact(name: &str, hard: bool, lhs: i128, relation: Relation, rhs: i128) -> Self {
        Self::evaluated(name, hard, lhs as f64, relation, rhs as f64, Some(relation.exact(lhs, rhs)))
    }

    pub(crate) fn approx(name: &str, hard: bool, lhs: f64, relation: Relation, rhs: f64) -> Self {
        Self::evaluated(name, hard, lhs, relation, rhs, relation.approx(lhs, rhs))
    }

    pub(crate) fn vacuous(name: &str, hard: bool, note: impl Into<String>) -> Self {
        CheckEntry {
            name: name.to_string(),
            status: CheckStatus::Vacuous,
            hard,
            detail: CheckDetail {
                note: Some(note.into()),
                ..Default::default()
            },
        }
    }

    pub(crate) fn at(mut self, vertex: usize) -> Self {
        self.detail.vertex = Some(vertex);
        self
    }

    pub(crate) fn witness(mut self, w: Vec<usize>) -> Self {
        self.detail.witness = Some(w);
        self
    }

    pub(crate) fn note(mut self, note: impl Into<String>) -> Self {
        self.detail.note = Some(note.into());
        self
    }

    /// Holds (or is vacuous, boundary, or report-only).
    pub fn ok(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// Vertex classes of the audited graph, listed for the record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditSets {
    pub large: Vec<usize>,
    pub moderate: Vec<usize>,
    pub heavy: Vec<usize>,
    pub exceptional: Vec<usize>,
    pub remaining: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaAuditReport {
    /// graph6 string of the audited graph.
    pub graph_id: String,
    pub k: usize,
    pub checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sets: Option<AuditSets>,
}

impl LemmaAuditReport {
    pub(crate) fn new(graph_id: String, k: usize) -> Self {
        LemmaAuditReport {
            graph_id,
            k,
            checks: Vec::new(),
            sets: None,
        }
    }

    /// No entry failed. Report-only entries cannot fail by construction.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckEntry::ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Keeps only the named checks; an empty filter keeps everything.
    pub fn retain_checks(&mut self, names: &[String]) {
        if !names.is_empty() {
            self.checks.retain(|c| names.iter().any(|n| n == &c.name));
        }
    }

    pub fn merge(&mut self, other: LemmaAuditReport) {
        self.checks.extend(other.checks);
        if self.sets.is_none() {
            self.sets = other.sets;
        }
    }

    /// One JSON object per check.
    pub fn json_lines(&self) -> Vec<Value> {
        self.checks
            .iter()
            .map(|c| {
                let mut obj = json!({
                    "graph": self.graph_id,
                    "k": self.k,
                    "check": c.name,
                    "status": c.status,
                    "hard": c.hard,
                });
                if let (Value::Object(o), Ok(Value::Object(d))) = (&mut obj, serde_json::to_value(&c.detail)) {
                    o.extend(d);
                }
                obj
            })
            .collect()
    }

    /// Per-check table for a single graph.
    pub fn table(&self) -> String {
        let mut out = format!("graph {}  k = {}\n", self.graph_id, self.k);
        let _ = writeln!(out, "{:<24} {:<11} {:>16} {:<2} {:<16} note", "check", "status", "lhs", "", "rhs");
        for c in &self.checks {
            let d = &c.detail;
            let num = |x: Option<f64>| x.map(fmt_num).unwrap_or_default();
            let _ = writeln!(
                out,
                "{:<24} {:<11} {:>16} {:<2} {:<16} {}",
                c.name,
                c.status.to_string(),
                num(d.lhs),
                d.relation.map(|r| r.symbol()).unwrap_or(""),
                num(d.rhs),
                d.note.as_deref().unwrap_or("")
            );
        }
        out
    }
}

fn fmt_num(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{x:.0}")
    } else if x.abs() >= 1e6 || x.abs() < 1e-4 {
        format!("{x:.6e}")
    } else {
        format!("{x:.9}")
    }
}

/// Status counts per check name across many reports.
pub fn summary_table(reports: &[LemmaAuditReport]) -> String {
    let mut counts: BTreeMap<&str, BTreeMap<CheckStatus, usize>> = BTreeMap::new();
    for r in reports {
        for c in &r.checks {
            *counts.entry(&c.name).or_default().entry(c.status).or_default() += 1;
        }
    }
    let mut out = format!(
        "{:<24} {:>8} {:>8} {:>8} {:>8} {:>11}\n",
        "check", "pass", "fail", "vacuous", "boundary", "report_only"
    );
    for (name, m) in counts {
        let get = |s| m.get(&s).copied().unwrap_or(0);
        let _ = writeln!(
            out,
            "{:<24} {:>8} {:>8} {:>8} {:>8} {:>11}",
            name,
            get(CheckStatus::Pass),
            get(CheckStatus::Fail),
            get(CheckStatus::Vacuous),
            get(CheckStatus::Boundary),
            get(CheckStatus::ReportOnly)
        );
    }
    let _ = writeln!(out, "graphs: {}", reports.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        assert!(Relation::Lt.exact(2, 3) && !Relation::Lt.exact(3, 3));
        assert_eq!(Relation::Le.approx(1.0, 1.0 + 1e-12), None);
        assert_eq!(Relation::Lt.approx(1.0, 2.0), Some(true));
        assert_eq!(Relation::Ge.approx(1.0, 2.0), Some(false));
    }

    #[test]
    fn statuses_follow_hardness() {
        assert_eq!(CheckEntry::exact("x", true, 1, Relation::Le, 0).status, CheckStatus::Fail);
        assert_eq!(CheckEntry::exact("x", false, 1, Relation::Le, 0).status, CheckStatus::ReportOnly);
        assert_eq!(CheckEntry::approx("x", true, 1.0, Relation::Le, 1.0).status, CheckStatus::Boundary);
        let mut r = LemmaAuditReport::new("@".into(), 2);
        r.checks.push(CheckEntry::exact("soft", false, 5, Relation::Le, 0));
        assert!(r.passed());
        r.checks.push(CheckEntry::exact("hard", true, 5, Relation::Le, 0));
        assert!(!r.passed());
        let lines = r.json_lines();
        assert_eq!(lines[1]["status"], "fail");
        assert_eq!(lines[1]["relation"], "<=");
        assert_eq!(lines[1]["lhs"], 5.0);
        assert!(summary_table(&[r]).contains("graphs: 1"));
    }
}
