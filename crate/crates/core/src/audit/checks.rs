use std::fmt;
use std::str::FromStr;

use crate::error::{param, Error, Result};
use crate::extremal::graph6_encode;
use crate::forbidden::{
    contains_cycle, contains_path_with_endpoints_in, family_violation, longest_path_order, ForbiddenFamily,
};
use crate::graph::{Graph, VertexSet};
use crate::spectral::{classify_vertices, spectral_radius, Constants};

use super::report::{AuditSets, CheckEntry, LemmaAuditReport, Relation};

fn graph_id(g: &Graph) -> String {
    graph6_encode(g).unwrap_or_else(|_| format!("n={} m={}", g.n(), g.m()))
}

fn require_k(k: usize) -> Result<()> {
    if k == 0 {
        return param("k must be at least 1");
    }
    Ok(())
}

/// Witness of a `C_{2k+2}`, if `g` has one.
fn even_cycle(g: &Graph, k: usize) -> Option<Vec<usize>> {
    contains_cycle(g, 2 * k + 2).map(|w| w.vertices)
}

/// Keeps the entry with the largest `lhs - rhs` (the tightest or most
/// violated vertex); ties keep the earliest.
fn worst(entries: impl IntoIterator<Item = CheckEntry>) -> Option<CheckEntry> {
    let gap = |e: &CheckEntry| {
        let d = &e.detail;
        let s = d.lhs.unwrap_or(0.0) - d.rhs.unwrap_or(0.0);
        match d.relation {
            Some(Relation::Ge) | Some(Relation::Gt) => -s,
            _ => s,
        }
    };
    entries.into_iter().fold(None, |best: Option<CheckEntry>, e| match best {
        Some(b) if gap(&b) >= gap(&e) => Some(b),
        _ => Some(e),
    })
}

/// Edge counts inside the first neighborhood and between the first and
/// second neighborhoods of every vertex, for `C_{2k+2}`-free graphs.
///
/// * `eq.N1-edge-bound`: `2 e(N_1(u)) <= (2k-1) d(u)`
/// * `eq.N1-kn-bound`: `e(N_1(u)) < kn`
/// * `eq.N1-N2-edge-bound`: `e(N_1(u), N_2(u)) <= min{(2k+1)n/2, (2k-1)d(u) + k(n-d(u)-1)}`
pub fn audit_neighborhood_bounds(g: &Graph, k: usize) -> Result<LemmaAuditReport> {
    require_k(k)?;
    let mut report = LemmaAuditReport::new(graph_id(g), k);
    let names = ["eq.N1-edge-bound", "eq.N1-kn-bound", "eq.N1-N2-edge-bound"];
    if let Some(w) = even_cycle(g, k) {
        for name in names {
            report
                .checks
                .push(CheckEntry::vacuous(name, true, format!("graph contains C{}", 2 * k + 2)).witness(w.clone()));
        }
        return Ok(report);
    }
    let n = g.n() as i128;
    let k = k as i128;
    let mut per: [Vec<CheckEntry>; 3] = Default::default();
    for u in 0..g.n() {
        let layers = g.bfs_layers(u)?;
        let n1 = layers.layer_set(1, g.n());
        let n2 = layers.layer_set(2, g.n());
        let e1 = g.edges_within(&n1) as i128;
        let e12 = g.edges_between(&n1, &n2) as i128;
        let d = g.degree(u) as i128;
        per[0].push(CheckEntry::exact(names[0], true, 2 * e1, Relation::Le, (2 * k - 1) * d).at(u));
        per[1].push(CheckEntry::exact(names[1], true, e1, Relation::Lt, k * n).at(u));
        // both sides doubled to stay in integers
        let rhs2 = ((2 * k + 1) * n).min(2 * ((2 * k - 1) * d + k * (n - d - 1)));
        per[2].push(
            CheckEntry::exact(names[2], true, 2 * e12, Relation::Le, rhs2)
                .at(u)
                .note("sides doubled"),
        );
    }
    for (name, entries) in names.iter().zip(per) {
        match worst(entries) {
            Some(e) => report.checks.push(e),
            None => report.checks.push(CheckEntry::vacuous(name, true, "graph has no vertices")),
        }
    }
    Ok(report)
}

/// Path guarantees for a partition `U ∪ W` of the vertex set.
///
/// * `lem.bipartition-A`: if `2e(U) + e(U,W) > (2k-2)|U| + k|W|` there is a
///   path on `2k` or `2k+1` vertices with both ends in `U`.
/// * `lem.bipartition-B`: if `2e(U) + e(U,W) > (2k-1)|U| + k|W|` there is a
///   path on `2k+1` vertices with both ends in `U`.
pub fn audit_bipartition_lemma(g: &Graph, u: &VertexSet, w: &VertexSet, k: usize) -> Result<LemmaAuditReport> {
    require_k(k)?;
    let n = g.n();
    if u.ones().chain(w.ones()).any(|v| v >= n) {
        return param(format!("vertex sets must lie in 0..{n}"));
    }
    if u.intersection_count(w) != 0 {
        let v = u.intersection(w).next().unwrap();
        return param(format!("U and W overlap at vertex {v}"));
    }
    if let Some(v) = (0..n).find(|&v| !u.contains(v) && !w.contains(v)) {
        return param(format!("U and W do not cover vertex {v}"));
    }
    let mut u_set = u.clone();
    u_set.grow(n);
    let mut w_set = w.clone();
    w_set.grow(n);
    let lhs = 2 * g.edges_within(&u_set) as i128 + g.edges_between(&u_set, &w_set) as i128;
    let (nu, nw, k) = (u_set.count_ones(..) as i128, w_set.count_ones(..) as i128, k as i128);
    let mut report = LemmaAuditReport::new(graph_id(g), k as usize);

    let parts: [(&str, i128, &[usize]); 2] = [
        ("lem.bipartition-A", 2 * k - 2, &[2 * k as usize, 2 * k as usize + 1]),
        ("lem.bipartition-B", 2 * k - 1, &[2 * k as usize + 1]),
    ];
    for (name, coeff, orders) in parts {
        let rhs = coeff * nu + k * nw;
        let premise = lhs > rhs;
        let mut entry = CheckEntry::exact(name, true, lhs, Relation::Gt, rhs);
        if !premise {
            entry.status = super::CheckStatus::Vacuous;
            entry.detail.note = Some("premise fails".into());
        } else {
            let found = orders
                .iter()
                .find_map(|&ell| contains_path_with_endpoints_in(g, &u_set, ell));
            match found {
                Some(p) => {
                    entry.detail.note = Some(format!("path on {} vertices", p.vertices.len()));
                    entry = entry.witness(p.vertices);
                }
                None => {
                    entry.status = super::CheckStatus::Fail;
                    entry.detail.holds = Some(false);
                    entry.detail.note = Some("premise holds but no promised path exists".into());
                }
            }
        }
        report.checks.push(entry);
    }
    Ok(report)
}

/// Whole-graph bounds.
///
/// * `lem.path-edge-bound`: with `ell` one more than the longest path
///   order, `m <= (ell-2)n/2`.
/// * `lem.lambda-upper`: `lambda <= sqrt(2k(n-1))`.
/// * `lem.even-cycle-edges`: `m <= 8k n^((k+2)/(k+1))`.
/// * `lem.degree-powers`: `sum d^2 <= 2km + k(n-1)n`.
///
/// The last three require `C_{2k+2}`-freeness and are vacuous otherwise.
pub fn audit_global_bounds(g: &Graph, k: usize) -> Result<LemmaAuditReport> {
    require_k(k)?;
    let mut report = LemmaAuditReport::new(graph_id(g), k);
    let (n, m) = (g.n() as i128, g.m() as i128);

    let longest = longest_path_order(g);
    if longest >= g.n() {
        report.checks.push(CheckEntry::vacuous(
            "lem.path-edge-bound",
            true,
            "graph has a Hamiltonian path",
        ));
    } else {
        let ell = longest as i128 + 1;
        report.checks.push(
            CheckEntry::exact("lem.path-edge-bound", true, 2 * m, Relation::Le, (ell - 2) * n)
                .note(format!("no path on {ell} vertices; sides doubled")),
        );
    }

    let names = ["lem.lambda-upper", "lem.even-cycle-edges", "lem.degree-powers"];
    if let Some(w) = even_cycle(g, k) {
        for name in names {
            report
                .checks
                .push(CheckEntry::vacuous(name, true, format!("graph contains C{}", 2 * k + 2)).witness(w.clone()));
        }
        return Ok(report);
    }
    let lambda = if g.m() == 0 { 0.0 } else { spectral_radius(g, 1e-12)?.lambda };
    let kf = k as f64;
    let nf = g.n() as f64;
    report.checks.push(CheckEntry::approx(
        names[0],
        true,
        lambda,
        Relation::Le,
        (2.0 * kf * (nf - 1.0)).max(0.0).sqrt(),
    ));
    report.checks.push(CheckEntry::approx(
        names[1],
        true,
        m as f64,
        Relation::Le,
        8.0 * kf * nf.powf((kf + 2.0) / (kf + 1.0)),
    ));
    let sum_sq: i128 = g.degrees().iter().map(|&d| (d * d) as i128).sum();
    let k = k as i128;
    report
        .checks
        .push(CheckEntry::exact(names[2], true, sum_sq, Relation::Le, 2 * k * m + k * (n - 1) * n));
    Ok(report)
}

/// Which cycles the audited graph is presumed extremal against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleMode {
    /// `{C_{2k+2}}`, extremal graph `S_{n,k}^+`.
    EvenOnly,
    /// `{C_{2k+1}, C_{2k+2}}`, extremal graph `S_{n,k}`.
    Both,
}

impl CycleMode {
    pub fn family(&self, k: usize) -> Result<ForbiddenFamily> {
        match self {
            CycleMode::EvenOnly => ForbiddenFamily::even_only(k),
            CycleMode::Both => ForbiddenFamily::both(k),
        }
    }
}

impl fmt::Display for CycleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleMode::EvenOnly => "even-only",
            CycleMode::Both => "both",
        })
    }
}

impl FromStr for CycleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even-only" | "even_only" | "even" => Ok(CycleMode::EvenOnly),
            "both" | "both-cycles" => Ok(CycleMode::Both),
            other => param(format!("unknown mode {other:?}; expected even-only or both")),
        }
    }
}

/// Where the audited graph came from. The minimum-entry floor is a hard
/// check for extremal and constructed graphs and report-only for
/// heuristic ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Provenance {
    /// Produced by exhaustive search.
    #[default]
    Extremal,
    /// One of the conjectured extremal constructions.
    Constructed,
    /// Output of the hill-climb or any other non-certified source.
    Heuristic,
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "extremal" => Ok(Provenance::Extremal),
            "constructed" => Ok(Provenance::Constructed),
            "heuristic" => Ok(Provenance::Heuristic),
            other => param(format!("unknown provenance {other:?}; expected extremal, constructed or heuristic")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpexAuditOptions {
    pub tol: f64,
    pub provenance: Provenance,
}

impl Default for SpexAuditOptions {
    fn default() -> Self {
        SpexAuditOptions {
            tol: 1e-12,
            provenance: Provenance::Extremal,
        }
    }
}

/// [`audit_spex_graph_with`] with default options.
pub fn audit_spex_graph(g: &Graph, k: usize, mode: CycleMode) -> Result<LemmaAuditReport> {
    audit_spex_graph_with(g, k, mode, &SpexAuditOptions::default())
}

/// Structure checks for a graph presumed spectrally extremal.
///
/// Hard checks: `eq.eigen-equation` (`|lambda v_u - sum_{w~u} v_w| <= 10 tol`
/// at every vertex) and `lem.perron-floor` (`min v >= 1/lambda`).
/// Everything else needs `n` large and is report-only: sizes of `L` and
/// `M`, degree floors on `L` and `L′`, the `e(S_1, L)` window, `|L′| = k`,
/// the weight and degree floors on `L′`, the neighborhood weight floor,
/// `E = ∅`, the `K_{k,n-k}` core and `e(R)`.
pub fn audit_spex_graph_with(
    g: &Graph,
    k: usize,
    mode: CycleMode,
    opts: &SpexAuditOptions,
) -> Result<LemmaAuditReport> {
    require_k(k)?;
    let family = mode.family(k)?;
    if let Some(w) = family_violation(g, &family) {
        return param(format!(
            "graph is not {family}-free (mode {mode}); witness cycle {:?}",
            w.vertices
        ));
    }
    if g.n() == 0 {
        return param("graph has no vertices");
    }
    let sr = spectral_radius(g, opts.tol)?;
    let lambda = sr.lambda;
    let v = &sr.perron;
    let n = g.n();
    let nf = n as f64;
    let kf = k as f64;
    let mut report = LemmaAuditReport::new(graph_id(g), k);

    // eigen-equation, worst vertex
    let (eq_vertex, eq_res) = (0..n)
        .map(|u| {
            let s: f64 = g.neighbors(u).iter().map(|&w| v[w]).sum();
            (u, (lambda * v[u] - s).abs())
        })
        .fold((0, -1.0), |a, b| if b.1 > a.1 { b } else { a });
    let bound = 10.0 * opts.tol;
    report.checks.push(
        CheckEntry::evaluated("eq.eigen-equation", true, eq_res, Relation::Le, bound, Some(eq_res <= bound))
            .at(eq_vertex),
    );

    let (min_vertex, min_v) = (0..n).map(|u| (u, v[u])).fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
    let floor = if lambda > 0.0 { 1.0 / lambda } else { f64::INFINITY };
    let hard = opts.provenance != Provenance::Heuristic;
    let holds = min_v >= floor - 1e-9;
    let mut entry = CheckEntry::evaluated("lem.perron-floor", hard, min_v, Relation::Ge, floor, Some(holds)).at(min_vertex);
    if !hard {
        entry = entry.note("heuristic graph");
    }
    report.checks.push(entry);

    let soft = [
        "lem.L-size",
        "lem.M-size",
        "lem.L-degree",
        "lem.L-count",
        "lem.Lprime-degree",
        "lem.S1-L-window",
        "lem.Lprime-size",
        "lem.Lprime-floor",
        "lem.neighborhood-weight",
        "lem.E-empty",
        "lem.bipartite-core",
        "struct.R-edges",
    ];
    let constants = match Constants::<f64>::choose(k) {
        Ok(c) => c,
        Err(_) => {
            for name in soft {
                report.checks.push(CheckEntry::vacuous(name, false, "requires k >= 2"));
            }
            return Ok(report);
        }
    };
    let classes = classify_vertices(g, &sr, &constants, None)?;
    let (alpha, eps) = (constants.alpha, constants.epsilon);
    let list = |s: &VertexSet| s.ones().collect::<Vec<_>>();
    let count = |s: &VertexSet| s.count_ones(..) as f64;

    let growth = nf.powf((kf + 3.0) / (2.0 * kf + 2.0));
    report.checks.push(CheckEntry::approx(
        soft[0],
        false,
        count(&classes.large),
        Relation::Le,
        16.0 * kf.sqrt() * growth / alpha,
    ));
    report.checks.push(CheckEntry::approx(
        soft[1],
        false,
        count(&classes.moderate),
        Relation::Le,
        48.0 * kf.sqrt() * growth / alpha,
    ));

    let deg_floor = alpha / (20.0 * kf) * nf;
    report.checks.push(
        worst(
            classes
                .large
                .ones()
                .map(|z| CheckEntry::approx(soft[2], false, g.degree(z) as f64, Relation::Ge, deg_floor).at(z)),
        )
        .unwrap_or_else(|| CheckEntry::vacuous(soft[2], false, "L is empty")),
    );
    let ratio = alpha / (20.0 * kf);
    report.checks.push(CheckEntry::approx(
        soft[3],
        false,
        count(&classes.large),
        Relation::Le,
        (kf + 1.0) / (ratio * ratio),
    ));

    report.checks.push(
        worst(classes.heavy.ones().map(|z| {
            CheckEntry::approx(soft[4], false, g.degree(z) as f64, Relation::Ge, (v[z] - eps) * nf).at(z)
        }))
        .unwrap_or_else(|| CheckEntry::vacuous(soft[4], false, "L′ is empty")),
    );

    // e(S_1(z), L) window for heavy z with v_z >= 1 - eps
    let window: Vec<CheckEntry> = classes
        .heavy
        .ones()
        .filter(|&z| v[z] >= 1.0 - eps)
        .flat_map(|z| {
            let mut s1 = classes.small.clone();
            s1.intersect_with(g.row(z));
            let e = g.edges_between(&s1, &classes.large) as f64;
            [
                CheckEntry::approx(soft[5], false, e, Relation::Ge, (kf - 2.0 * eps) * nf).at(z),
                CheckEntry::approx(soft[5], false, e, Relation::Le, (kf + eps) * nf).at(z),
            ]
        })
        .collect();
    report.checks.push(
        window
            .iter()
            .find(|e| e.detail.holds == Some(false))
            .or(window.first())
            .cloned()
            .unwrap_or_else(|| CheckEntry::vacuous(soft[5], false, "no heavy vertex with weight >= 1 - epsilon")),
    );

    report.checks.push(
        CheckEntry::exact(soft[6], false, classes.heavy.count_ones(..) as i128, Relation::Eq, k as i128)
            .witness(list(&classes.heavy)),
    );
    let k3 = kf * kf * kf;
    let floors: Vec<CheckEntry> = classes
        .heavy
        .ones()
        .flat_map(|z| {
            [
                CheckEntry::approx(soft[7], false, g.degree(z) as f64, Relation::Ge, (1.0 - 1.0 / (8.0 * k3)) * nf).at(z),
                CheckEntry::approx(soft[7], false, v[z], Relation::Ge, 1.0 - 1.0 / (16.0 * k3)).at(z),
            ]
        })
        .collect();
    report.checks.push(
        floors
            .iter()
            .find(|e| e.detail.holds == Some(false))
            .or(floors.first())
            .cloned()
            .unwrap_or_else(|| CheckEntry::vacuous(soft[7], false, "L′ is empty")),
    );

    let target = kf - 1.0 / (16.0 * kf * kf);
    report.checks.push(
        worst((0..n).map(|u| {
            let s: f64 = g.neighbors(u).iter().map(|&w| v[w]).sum();
            CheckEntry::approx(soft[8], false, s, Relation::Ge, target).at(u)
        }))
        .expect("graph is nonempty"),
    );

    report.checks.push(
        CheckEntry::exact(soft[9], false, classes.exceptional.count_ones(..) as i128, Relation::Eq, 0)
            .witness(list(&classes.exceptional)),
    );

    // K_{k,n-k} with L′ as the small side
    let mut missing = 0i128;
    for r in (0..n).filter(|&r| !classes.heavy.contains(r)) {
        missing += (classes.heavy.count_ones(..) - g.row(r).intersection_count(&classes.heavy)) as i128;
    }
    let mut core = CheckEntry::exact(soft[10], false, missing, Relation::Eq, 0).note("missing L′ to V∖L′ edges");
    if classes.heavy.count_ones(..) != k {
        core.detail.holds = Some(false);
        core.detail.note = Some(format!("|L′| = {} differs from k", classes.heavy.count_ones(..)));
    }
    report.checks.push(core);

    let er = g.edges_within(&classes.remaining) as i128;
    let r_entry = match mode {
        CycleMode::EvenOnly => CheckEntry::exact(soft[11], false, er, Relation::Le, 1),
        CycleMode::Both => CheckEntry::exact(soft[11], false, er, Relation::Eq, 0),
    };
    report.checks.push(r_entry.note(format!("|R| = {}", classes.remaining.count_ones(..))));

    report.sets = Some(AuditSets {
        large: list(&classes.large),
        moderate: list(&classes.moderate),
        heavy: list(&classes.heavy),
        exceptional: list(&classes.exceptional),
        remaining: list(&classes.remaining),
    });
    Ok(report)
}
