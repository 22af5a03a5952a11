use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::forbidden::{is_family_free, ForbiddenFamily};
use crate::graph::Graph;
use crate::spectral::spectral_radius;

use super::canonical::{are_isomorphic, SmallGraph, SMALL_MAX_N};
use super::enumerate::{shard_roots, EnumerateOptions, GraphStream, DEFAULT_ENUM_CAP};
use super::graph6::graph6_encode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Edges,
    Lambda,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Edges => "edges",
            Objective::Lambda => "lambda",
        })
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "edges" => Ok(Objective::Edges),
            "lambda" => Ok(Objective::Lambda),
            other => param(format!("unknown objective {other:?}; expected edges or lambda")),
        }
    }
}

/// Best objective value: an exact edge count or a spectral radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BestValue {
    Edges(usize),
    Lambda(f64),
}

impl BestValue {
    pub fn as_f64(&self) -> f64 {
        match *self {
            BestValue::Edges(m) => m as f64,
            BestValue::Lambda(l) => l,
        }
    }
}

impl fmt::Display for BestValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BestValue::Edges(m) => write!(f, "{m}"),
            BestValue::Lambda(l) => write!(f, "{l:.12}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalRecord {
    pub n: usize,
    pub family: ForbiddenFamily,
    pub objective: Objective,
    pub best_value: BestValue,
    /// Pairwise non-isomorphic maximizers sorted by graph6 string.
    pub argmax: Vec<Graph>,
    pub graphs_scanned: u64,
}

/// Where the candidate graphs come from.
pub enum Source<'a> {
    /// Orderly enumeration, pruned by the family.
    Builtin,
    /// Externally supplied graphs, e.g. decoded graph6 lines.
    Graphs(Box<dyn Iterator<Item = Result<Graph>> + 'a>),
}

pub struct ExtremalOptions<'a> {
    pub tol: f64,
    pub lambda_tie_tol: f64,
    /// Worker threads for the builtin source; `None` uses the global pool.
    pub threads: Option<usize>,
    pub cap: usize,
    /// Called with the running count every 100 000 graphs.
    pub progress: Option<&'a (dyn Fn(u64) + Sync)>,
}

impl Default for ExtremalOptions<'_> {
    fn default() -> Self {
        ExtremalOptions {
            tol: 1e-12,
            lambda_tie_tol: 1e-9,
            threads: None,
            cap: DEFAULT_ENUM_CAP,
            progress: None,
        }
    }
}

const PROGRESS_EVERY: u64 = 100_000;

/// Running maximum with ties; lambda candidates are kept while within the
/// tie tolerance of the current best.
#[derive(Default)]
struct Best {
    value: f64,
    found: bool,
    hits: Vec<(f64, Graph)>,
    scanned: u64,
}

impl Best {
    fn offer(&mut self, value: f64, g: impl FnOnce() -> Graph, tie: f64) {
        if !self.found || value > self.value + tie {
            self.value = value;
            self.found = true;
            self.hits.clear();
            self.hits.push((value, g()));
        } else if value >= self.value - tie {
            if value > self.value {
                self.value = value;
                let floor = value - tie;
                self.hits.retain(|(v, _)| *v >= floor);
            }
            self.hits.push((value, g()));
        }
    }

    fn merge(mut self, other: Best, tie: f64) -> Best {
        self.scanned += other.scanned;
        for (v, g) in other.hits {
            self.offer(v, || g, tie);
        }
        self
    }
}

fn evaluate(g: &Graph, objective: Objective, tol: f64) -> Result<f64> {
    match objective {
        Objective::Edges => Ok(g.m() as f64),
        Objective::Lambda => {
            if g.m() == 0 {
                return Ok(0.0);
            }
            Ok(spectral_radius(g, tol)?.lambda)
        }
    }
}

/// Exact extremal value and all maximizers among family-free graphs on `n` vertices.
pub fn compute_extremal(
    n: usize,
    family: &ForbiddenFamily,
    objective: Objective,
    source: Source<'_>,
    opts: &ExtremalOptions<'_>,
) -> Result<ExtremalRecord> {
    if opts.tol <= 0.0 || opts.lambda_tie_tol < 0.0 {
        return param("tolerances must be positive");
    }
    let tie = match objective {
        Objective::Edges => 0.0,
        Objective::Lambda => opts.lambda_tie_tol,
    };
    let counter = AtomicU64::new(0);
    let tick = || {
        let c = counter.fetch_add(1, Ordering::Relaxed) + 1;
        if c % PROGRESS_EVERY == 0 {
            if let Some(p) = opts.progress {
                p(c);
            }
        }
    };

    let best = match source {
        Source::Builtin => {
            let eopts = EnumerateOptions {
                cap: opts.cap,
                reversed: false,
                prune: Some(family.clone()),
            };
            eopts.check(n)?;
            let level = n.saturating_sub(2).max(1).min(n);
            let roots = shard_roots(level, &eopts)?;
            let run = || -> Result<Best> {
                roots
                    .par_iter()
                    .map(|root| {
                        let mut best = Best::default();
                        for sg in GraphStream::from_root(*root, n, &eopts) {
                            tick();
                            best.scanned += 1;
                            let g = sg.to_graph();
                            let value = evaluate(&g, objective, opts.tol)?;
                            best.offer(value, || g, tie);
                        }
                        Ok(best)
                    })
                    .try_reduce(Best::default, |a, b| Ok(a.merge(b, tie)))
            };
            match opts.threads {
                Some(t) => rayon::ThreadPoolBuilder::new()
                    .num_threads(t.max(1))
                    .build()
                    .map_err(|e| Error::Parameter(format!("cannot build thread pool: {e}")))?
                    .install(run)?,
                None => run()?,
            }
        }
        Source::Graphs(stream) => {
            let mut best = Best::default();
            for (index, g) in stream.enumerate() {
                let g = g?;
                if g.n() != n {
                    return Err(Error::Data {
                        index,
                        message: format!("graph has {} vertices, expected {n}", g.n()),
                    });
                }
                tick();
                best.scanned += 1;
                if !is_family_free(&g, family).0 {
                    continue;
                }
                let value = evaluate(&g, objective, opts.tol)?;
                best.offer(value, || g, tie);
            }
            best
        }
    };

    if !best.found {
        return param(format!("no {family}-free graph on {n} vertices in the source"));
    }
    let argmax = dedupe(best.hits.into_iter().map(|(_, g)| g).collect())?;
    let best_value = match objective {
        Objective::Edges => BestValue::Edges(best.value as usize),
        Objective::Lambda => BestValue::Lambda(best.value),
    };
    Ok(ExtremalRecord {
        n,
        family: family.clone(),
        objective,
        best_value,
        argmax,
        graphs_scanned: best.scanned,
    })
}

/// Canonical, pairwise non-isomorphic, sorted by graph6.
fn dedupe(graphs: Vec<Graph>) -> Result<Vec<Graph>> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for g in graphs {
        let g = if g.n() <= SMALL_MAX_N {
            SmallGraph::from_graph(&g)?.canonical_form().0.to_graph()
        } else {
            g
        };
        let dup = out.iter().any(|(_, h)| {
            if g.n() <= SMALL_MAX_N {
                *h == g
            } else {
                are_isomorphic(h, &g)
            }
        });
        if !dup {
            out.push((graph6_encode(&g)?, g));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

#[derive(Serialize)]
struct JsonRecord {
    n: usize,
    family: String,
    objective: Objective,
    best_value: BestValue,
    num_argmax: usize,
    graphs_scanned: u64,
    seconds: Option<f64>,
    argmax: Vec<String>,
}

impl ExtremalRecord {
    pub fn argmax_graph6(&self) -> Vec<String> {
        self.argmax
            .iter()
            .map(|g| graph6_encode(g).expect("argmax graphs are small"))
            .collect()
    }

    /// JSON object; `seconds` is omitted (null) unless supplied so output
    /// stays reproducible by default.
    pub fn to_json(&self, seconds: Option<f64>) -> serde_json::Value {
        serde_json::to_value(JsonRecord {
            n: self.n,
            family: self.family.to_string(),
            objective: self.objective,
            best_value: self.best_value,
            num_argmax: self.argmax.len(),
            graphs_scanned: self.graphs_scanned,
            seconds,
            argmax: self.argmax_graph6(),
        })
        .expect("record serializes")
    }
}

/// CSV header plus one row per record. The trailing `argmax` column holds
/// the space-separated graph6 strings.
pub fn write_records_csv<W: Write>(out: W, records: &[(ExtremalRecord, Option<f64>)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record([
        "n",
        "family",
        "objective",
        "best_value",
        "num_argmax",
        "graphs_scanned",
        "seconds",
        "argmax",
    ])
    .map_err(csv_err)?;
    for (r, seconds) in records {
        w.write_record([
            r.n.to_string(),
            r.family.to_string(),
            r.objective.to_string(),
            r.best_value.to_string(),
            r.argmax.len().to_string(),
            r.graphs_scanned.to_string(),
            seconds.map(|s| format!("{s:.3}")).unwrap_or_default(),
            r.argmax_graph6().join(" "),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
