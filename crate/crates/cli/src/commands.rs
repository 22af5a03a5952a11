use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};
use spexgraph::audit::{
    audit_bipartition_lemma, audit_global_bounds, audit_neighborhood_bounds, audit_spex_graph_with, summary_table,
    CheckStatus, CycleMode, LemmaAuditReport, SpexAuditOptions,
};
use spexgraph::extremal::{
    compute_extremal, graph6_encode, local_search, theorem_tension, ExtremalOptions, Source,
};
use spexgraph::forbidden::family_violation;
use spexgraph::graph::vertex_set;
use spexgraph::spectral::spectral_radius;
use spexgraph::{Error, Graph};

use crate::input::{decode_lines, graphs, named_graph, read_text};
use crate::{AuditArgs, AuditKind, CheckFreeArgs, ConstructArgs, ExtremalArgs, Failure, Format, SearchArgs, SpectralArgs};

type Out = dyn Write;

fn unsupported(cmd: &str, format: Format) -> Failure {
    Failure::Lib(Error::Parameter(format!("format {format:?} is not available for {cmd}").to_lowercase()))
}

fn json_line(out: &mut Out, v: &Value) -> Result<(), Failure> {
    writeln!(out, "{v}")?;
    Ok(())
}

fn csv_writer<'a>(out: &'a mut Out) -> csv::Writer<&'a mut Out> {
    csv::Writer::from_writer(out)
}

fn csv_row<W: Write, I, S>(w: &mut csv::Writer<W>, row: I) -> Result<(), Failure>
where
    I: IntoIterator<Item = S>,
    S: AsRef<[u8]>,
{
    w.write_record(row).map_err(|e| Failure::Output(e.into()))
}

fn edges_json(g: &Graph) -> Value {
    Value::from(g.edges().map(|(u, v)| json!([u, v])).collect::<Vec<_>>())
}

pub fn construct(a: &ConstructArgs, out: &mut Out) -> Result<(), Failure> {
    let g = named_graph(&a.graph)?;
    let g6 = graph6_encode(&g)?;
    match a.format {
        Format::G6 => writeln!(out, "{g6}")?,
        Format::Json => json_line(
            out,
            &json!({
                "family": a.graph.family.map(|f| f.name()),
                "n": g.n(),
                "m": g.m(),
                "graph6": g6,
                "edges": edges_json(&g),
            }),
        )?,
        Format::Csv => {
            let mut w = csv_writer(out);
            csv_row(&mut w, ["graph6", "n", "m"])?;
            csv_row(&mut w, [g6, g.n().to_string(), g.m().to_string()])?;
            w.flush()?;
        }
        Format::Table => {
            writeln!(out, "graph6  {g6}\nn       {}\nm       {}", g.n(), g.m())?;
            let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
            writeln!(out, "edges   {}", edges.join(" "))?;
        }
    }
    Ok(())
}

pub fn spectral(a: &SpectralArgs, out: &mut Out) -> Result<(), Failure> {
    let input = graphs(&a.input)?;
    let mut results = Vec::with_capacity(input.len());
    for (id, g) in &input {
        results.push((id, g, spectral_radius(g, a.tol)?));
    }
    match a.format {
        Format::G6 => return Err(unsupported("spectral", a.format)),
        Format::Json => {
            for (id, g, r) in &results {
                json_line(
                    out,
                    &json!({
                        "graph": id,
                        "n": g.n(),
                        "m": g.m(),
                        "lambda": r.lambda,
                        "residual": r.residual,
                        "iterations": r.iterations,
                        "argmax_vertex": r.argmax_vertex,
                        "perron": r.perron,
                    }),
                )?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            csv_row(&mut w, ["graph", "n", "m", "lambda", "residual", "iterations", "argmax_vertex"])?;
            for (id, g, r) in &results {
                csv_row(
                    &mut w,
                    [
                        id.to_string(),
                        g.n().to_string(),
                        g.m().to_string(),
                        format!("{:.15}", r.lambda),
                        format!("{:e}", r.residual),
                        r.iterations.to_string(),
                        r.argmax_vertex.to_string(),
                    ],
                )?;
            }
            w.flush()?;
        }
        Format::Table => {
            writeln!(out, "{:<20} {:>5} {:>7} {:>20} {:>10} {:>8}", "graph", "n", "m", "lambda", "residual", "iters")?;
            for (id, g, r) in &results {
                writeln!(
                    out,
                    "{:<20} {:>5} {:>7} {:>20.15} {:>10.2e} {:>8}",
                    id,
                    g.n(),
                    g.m(),
                    r.lambda,
                    r.residual,
                    r.iterations
                )?;
            }
        }
    }
    Ok(())
}

pub fn check_free(a: &CheckFreeArgs, out: &mut Out) -> Result<(), Failure> {
    let family = a.family.resolve(a.input.graph.k)?;
    let input = graphs(&a.input)?;
    let results: Vec<_> = input.iter().map(|(id, g)| (id, family_violation(g, &family))).collect();
    let fam = family.to_string();
    match a.format {
        Format::G6 => {
            for (id, w) in &results {
                if w.is_none() {
                    writeln!(out, "{id}")?;
                }
            }
        }
        Format::Json => {
            for (id, w) in &results {
                json_line(out, &json!({ "graph": id, "family": fam, "free": w.is_none(), "witness": w }))?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            csv_row(&mut w, ["graph", "family", "free", "cycle_length", "witness"])?;
            for (id, wit) in &results {
                let (len, verts) = match wit {
                    Some(c) => (
                        c.vertices.len().to_string(),
                        c.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
                    ),
                    None => (String::new(), String::new()),
                };
                csv_row(&mut w, [id.to_string(), fam.clone(), (wit.is_none()).to_string(), len, verts])?;
            }
            w.flush()?;
        }
        Format::Table => {
            for (id, w) in &results {
                match w {
                    None => writeln!(out, "{id:<20} {fam}-free")?,
                    Some(c) => writeln!(out, "{id:<20} contains C{} on {:?}", c.vertices.len(), c.vertices)?,
                }
            }
        }
    }
    Ok(())
}

pub fn extremal(a: &ExtremalArgs, out: &mut Out) -> Result<(), Failure> {
    let family = a.family.resolve(a.k)?;
    let progress = |count: u64| eprintln!("spexgraph: {count} graphs scanned");
    let opts = ExtremalOptions {
        tol: a.tol,
        threads: a.threads,
        cap: a.cap,
        progress: Some(&progress),
        ..Default::default()
    };
    let text;
    let source = match &a.g6 {
        Some(path) => {
            text = read_text(path)?;
            Source::Graphs(Box::new(decode_lines(&text)))
        }
        None => Source::Builtin,
    };
    let start = Instant::now();
    let record = compute_extremal(a.n, &family, a.objective, source, &opts)?;
    let seconds = a.timing.then(|| start.elapsed().as_secs_f64());
    match a.format {
        Format::G6 => {
            for s in record.argmax_graph6() {
                writeln!(out, "{s}")?;
            }
        }
        Format::Json => json_line(out, &record.to_json(seconds))?,
        Format::Csv => spexgraph::extremal::write_records_csv(&mut *out, &[(record, seconds)])?,
        Format::Table => {
            writeln!(out, "n           {}", record.n)?;
            writeln!(out, "family      {}", record.family)?;
            writeln!(out, "objective   {}", record.objective)?;
            writeln!(out, "best_value  {}", record.best_value)?;
            writeln!(out, "scanned     {}", record.graphs_scanned)?;
            writeln!(out, "argmax      {}", record.argmax_graph6().join(" "))?;
            if let Some(s) = seconds {
                writeln!(out, "seconds     {s:.3}")?;
            }
        }
    }
    Ok(())
}

pub fn search(a: &SearchArgs, out: &mut Out) -> Result<(), Failure> {
    let family = a.family.resolve(a.k)?;
    let trace = local_search(a.n, &family, a.seed, a.max_iters)?;
    let g6 = graph6_encode(&trace.final_graph)?;
    let tension = theorem_tension(&trace, &family);
    match a.format {
        Format::G6 => writeln!(out, "{g6}")?,
        Format::Json => {
            let mut v = serde_json::to_value(&trace).map_err(|e| Failure::Output(e.into()))?;
            if let Value::Object(o) = &mut v {
                o.insert("n".into(), json!(a.n));
                o.insert("family".into(), json!(family.to_string()));
                o.insert("final_graph6".into(), json!(g6));
                o.insert("tension".into(), json!(tension));
            }
            json_line(out, &v)?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            csv_row(&mut w, ["step", "best_lambda"])?;
            for (i, l) in trace.best_lambda_per_step.iter().enumerate() {
                csv_row(&mut w, [(i + 1).to_string(), format!("{l:.15}")])?;
            }
            w.flush()?;
        }
        Format::Table => {
            writeln!(out, "n              {}", a.n)?;
            writeln!(out, "family         {family}")?;
            writeln!(out, "seed           {}", trace.seed)?;
            writeln!(out, "iterations     {}", trace.iterations)?;
            writeln!(out, "accepted       {}", trace.accepted_moves)?;
            writeln!(out, "restarts       {}", trace.restarts)?;
            writeln!(out, "final_lambda   {:.12}", trace.final_lambda)?;
            writeln!(out, "final_graph6   {g6}")?;
            if let Some(t) = tension {
                writeln!(
                    out,
                    "reference      {}({}, {}) lambda {:.12}{}",
                    t.reference,
                    a.n,
                    t.k,
                    t.reference_lambda,
                    if t.exceeds { "  EXCEEDED" } else { "" }
                )?;
            }
        }
    }
    Ok(())
}

fn audit_graph(a: &AuditArgs, k: usize, id: &str, g: &Graph) -> spexgraph::Result<LemmaAuditReport> {
    let mode = if a.both { CycleMode::Both } else { CycleMode::EvenOnly };
    let mut report: Option<LemmaAuditReport> = None;
    for kind in &a.kind {
        let r = match kind {
            AuditKind::Neighborhood => audit_neighborhood_bounds(g, k)?,
            AuditKind::Global => audit_global_bounds(g, k)?,
            AuditKind::Bipartition => {
                if a.u.is_empty() {
                    return Err(Error::Parameter("the bipartition audit needs --u".into()));
                }
                if let Some(&v) = a.u.iter().find(|&&v| v >= g.n()) {
                    return Err(Error::Parameter(format!("--u vertex {v} is out of range for {id}")));
                }
                let u = vertex_set(g.n(), a.u.iter().copied());
                let w = vertex_set(g.n(), (0..g.n()).filter(|v| !u.contains(*v)));
                audit_bipartition_lemma(g, &u, &w, k)?
            }
            AuditKind::Spex => {
                let opts = SpexAuditOptions {
                    tol: a.tol,
                    provenance: a.provenance,
                };
                audit_spex_graph_with(g, k, mode, &opts)?
            }
        };
        match &mut report {
            Some(acc) => acc.merge(r),
            None => report = Some(r),
        }
    }
    let mut report = report.ok_or_else(|| Error::Parameter("--kind is empty".into()))?;
    report.retain_checks(&a.checks);
    Ok(report)
}

pub fn audit(a: &AuditArgs, out: &mut Out) -> Result<(), Failure> {
    let k = a.input.graph.k.ok_or_else(|| Error::Parameter("audit needs --k".into()))?;
    let input = graphs(&a.input)?;
    let run = || -> spexgraph::Result<Vec<LemmaAuditReport>> {
        input.par_iter().map(|(id, g)| audit_graph(a, k, id, g)).collect()
    };
    let reports = match a.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Parameter(format!("--threads {t}: {e}")))?
            .install(run)?,
        None => run()?,
    };
    match a.format {
        Format::G6 => return Err(unsupported("audit", a.format)),
        Format::Json => {
            for r in &reports {
                for line in r.json_lines() {
                    json_line(out, &line)?;
                }
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            csv_row(
                &mut w,
                ["graph", "k", "check", "status", "hard", "lhs", "relation", "rhs", "vertex", "note"],
            )?;
            let num = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
            for r in &reports {
                for c in &r.checks {
                    let d = &c.detail;
                    csv_row(
                        &mut w,
                        [
                            r.graph_id.clone(),
                            r.k.to_string(),
                            c.name.clone(),
                            c.status.to_string(),
                            c.hard.to_string(),
                            num(d.lhs),
                            d.relation.map(|x| x.symbol().to_string()).unwrap_or_default(),
                            num(d.rhs),
                            d.vertex.map(|v| v.to_string()).unwrap_or_default(),
                            d.note.clone().unwrap_or_default(),
                        ],
                    )?;
                }
            }
            w.flush()?;
        }
        Format::Table if a.corpus => write!(out, "{}", summary_table(&reports))?,
        Format::Table => {
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                write!(out, "{}", r.table())?;
            }
        }
    }
    let failed = reports.iter().any(|r| r.checks.iter().any(|c| c.status == CheckStatus::Fail));
    if failed {
        return Err(Failure::AuditFailed);
    }
    Ok(())
}
