use assert_cmd::Command;
use predicates::prelude::*;
use serde_json::Value;
use spexgraph::extremal::{are_isomorphic, graph6_decode};
use spexgraph::{construct_named, Family};

fn bin() -> Command {
    Command::cargo_bin("spexgraph").unwrap()
}

fn stdout_of(args: &[&str], stdin: &str) -> String {
    let out = bin().args(args).write_stdin(stdin).assert().success().get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

#[test]
fn construct_emits_one_graph6_line() {
    let out = stdout_of(&["construct", "--family", "s_nk_plus", "--n", "20", "--k", "2", "--out", "g6"], "");
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 1);
    let g = graph6_decode(lines[0]).unwrap();
    assert_eq!(g, construct_named(Family::SNkPlus, &[20, 2]).unwrap());
}

#[test]
fn spectral_reads_standard_input() {
    let s52 = stdout_of(&["construct", "--family", "s_nk", "--n", "5", "--k", "2"], "");
    let out = stdout_of(&["spectral", "--g6", "-", "--tol", "1e-12"], &s52);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert!((v["lambda"].as_f64().unwrap() - 3.0).abs() < 1e-11);
    assert!(v["residual"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn extremal_csv_row() {
    let out = stdout_of(&["extremal", "--n", "7", "--forbid", "C6", "--objective", "lambda", "--format", "csv"], "");
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    let headers = rdr.headers().unwrap().clone();
    let field = |name: &str| rows[0][headers.iter().position(|h| h == name).unwrap()].to_string();
    assert_eq!(field("best_value"), "4.141336115655");
    assert_eq!(field("seconds"), "");
    for s in field("argmax").split_whitespace() {
        assert_eq!(graph6_decode(s).unwrap().n(), 7);
    }
}

#[test]
fn k_with_mode_expands_the_family() {
    let even = stdout_of(&["extremal", "--n", "6", "--k", "2", "--even-only", "--format", "json"], "");
    let both = stdout_of(&["extremal", "--n", "6", "--k", "2", "--both", "--format", "json"], "");
    let even: Value = serde_json::from_str(even.trim()).unwrap();
    let both: Value = serde_json::from_str(both.trim()).unwrap();
    assert_eq!(even["family"], "C6");
    assert_eq!(both["family"], "C5,C6");
}

#[test]
fn turan_argmax_round_trips() {
    let out = stdout_of(&["extremal", "--n", "6", "--forbid", "C3", "--objective", "edges", "--out", "g6"], "");
    let g = graph6_decode(out.trim()).unwrap();
    assert!(are_isomorphic(&g, &construct_named(Family::Turan, &[6, 2]).unwrap()));
}

#[test]
fn search_is_deterministic() {
    let args = ["search", "--n", "14", "--k", "2", "--seed", "7", "--max-iters", "300"];
    let a = stdout_of(&args, "");
    let b = stdout_of(&args, "");
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(a.trim()).unwrap();
    let g = graph6_decode(v["final_graph6"].as_str().unwrap()).unwrap();
    assert_eq!(g.n(), 14);
    assert_eq!(v["tension"]["reference"], "s_nk_plus");
    assert_eq!(v["best_lambda_per_step"].as_array().unwrap().len(), 300);
}

#[test]
fn check_free_reports_witness() {
    let c6 = stdout_of(&["construct", "--family", "cycle", "--n", "6"], "");
    let out = stdout_of(&["check-free", "--g6", "-", "--k", "2"], &c6);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["free"], false);
    assert_eq!(v["witness"]["vertices"].as_array().unwrap().len(), 6);
}

#[test]
fn audit_corpus_is_thread_independent() {
    let corpus = "DQc\nD~{\nEhEG\nE?Bw\nFJ]Fw\n";
    let run = |t: &str| stdout_of(&["audit", "--g6", "-", "--k", "2", "--corpus", "--threads", t], corpus);
    let one = run("1");
    assert_eq!(one, run("3"));
    assert!(one.contains("lem.degree-powers") && one.contains("graphs: 5"));
}

#[test]
fn audit_filters_checks_as_json_lines() {
    let g = stdout_of(&["construct", "--family", "s_nk_plus", "--n", "200", "--k", "2"], "");
    let out = stdout_of(
        &["audit", "--g6", "-", "--k", "2", "--kind", "spex", "--checks", "lem.E-empty,struct.R-edges", "--format", "json"],
        &g,
    );
    let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[1]["check"], "struct.R-edges");
    assert_eq!(lines[1]["lhs"], 1.0);
}

#[test]
fn bipartition_audit_uses_u() {
    let k4 = stdout_of(&["construct", "--family", "complete", "--n", "4"], "");
    let out = stdout_of(
        &["audit", "--g6", "-", "--k", "1", "--kind", "bipartition", "--u", "0,1,2,3", "--format", "csv"],
        &k4,
    );
    assert!(out.lines().any(|l| l.contains("lem.bipartition-B,pass")));
}

#[test]
fn hard_audit_failure_exits_4() {
    let p5 = stdout_of(&["construct", "--family", "path", "--n", "5"], "");
    bin()
        .args(["audit", "--g6", "-", "--k", "2", "--kind", "spex"])
        .write_stdin(p5.clone())
        .assert()
        .code(4)
        .stdout(predicate::str::contains("lem.perron-floor"));
    bin()
        .args(["audit", "--g6", "-", "--k", "2", "--kind", "spex", "--provenance", "heuristic"])
        .write_stdin(p5)
        .assert()
        .success();
}

#[test]
fn parameter_errors_exit_2() {
    bin().args(["spectral", "--bogus"]).assert().code(2);
    bin()
        .args(["extremal", "--n", "12", "--forbid", "C6"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("n = 12"));
    bin().args(["check-free", "--g6", "-", "--forbid", "X7"]).assert().code(2);
    bin().args(["construct", "--family", "s_nk", "--n", "5"]).assert().code(2).stderr(predicate::str::contains("--k"));
    bin().args(["spectral", "--g6", "/nonexistent/file.g6"]).assert().code(2);
    bin()
        .args(["audit", "--g6", "-", "--k", "2", "--kind", "spex"])
        .write_stdin("E~~w\n")
        .assert()
        .code(2)
        .stderr(predicate::str::contains("witness cycle"));
}

#[test]
fn malformed_graph6_exits_3_with_position() {
    bin()
        .args(["spectral", "--g6", "-"])
        .write_stdin("D~{\nBh\n")
        .assert()
        .code(3)
        .stderr(predicate::str::contains("record 1").and(predicate::str::contains("'Bh'")));
    bin()
        .args(["extremal", "--n", "3", "--forbid", "C3", "--g6", "-"])
        .write_stdin("Bw\nCF\n")
        .assert()
        .code(3);
}
