use std::path::Path;
use std::process::{Command, Output};

use c4free::enumerate::canonical_code;
use c4free::graph::codec::decode_graph6;
use c4free::graph::Graph;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_c4free")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn chain_header() {
    let out = run(&["construct", "chain", "--q", "7", "--k", "2", "--mode", "identify"]);
    assert_eq!(out.status.code(), Some(0));
    let h = json(&out);
    assert_eq!((h["n"].as_u64(), h["diameter"].as_u64()), (Some(111), Some(8)));
    assert_eq!(h["c4_free"], Value::Bool(true));
}

#[test]
fn verify_brown_prints_seven_passes() {
    let out = run(&["verify", "brown", "--q", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 7);
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn audit_of_k4_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("k4.g6");
    std::fs::write(&f, "C~\n").unwrap();
    let out = run(&["audit", "--in", path_str(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["c4_free"], Value::Bool(false));
    assert_eq!(r["certificates"]["c4_witness"].as_array().map(Vec::len), Some(4));
}

#[test]
fn construct_then_audit_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("fig1.g6");
    let dot = dir.path().join("fig1.dot");
    let report = dir.path().join("fig1.json");
    let out = run(&["construct", "figure1", "--k", "2", "--out", path_str(&g6), "--dot", path_str(&dot)]);
    assert_eq!(out.status.code(), Some(0));
    let header = json(&out);
    let roles = dir.path().join("fig1.roles");
    assert!(std::fs::read_to_string(&roles).unwrap().lines().any(|l| l.starts_with("u=")));
    assert_eq!(std::fs::read_to_string(&dot).unwrap().matches(" -- ").count() as u64, header["m"].as_u64().unwrap());

    let out = run(&[
        "audit", "--in", path_str(&g6), "--labels", path_str(&roles), "--claims-root", "u", "--json",
        path_str(&report),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    for key in ["n", "diameter", "lambda"] {
        assert_eq!(r[key], header[key], "{key}");
    }
    let thm1 = r["inequalities"].as_array().unwrap().iter().find(|x| x["id"] == "thm1").unwrap();
    assert_eq!(thm1["slack"], "3/5");
    assert_eq!(r["profile"], serde_json::json!([1, 3, 4, 2, 3, 2, 3, 2, 4, 3, 1]));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["construct", "h", "--q", "5"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "chain", "--q", "7"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--n", "40"]).status.code(), Some(2));
    assert_eq!(run(&["audit", "--in", "/nonexistent/x.g6"]).status.code(), Some(2));
}

#[test]
fn enumerate_is_deterministic_and_finds_petersen() {
    let a = run(&["enumerate", "--n", "10", "--min-lambda", "3", "--workers", "1"]);
    let b = run(&["enumerate", "--n", "10", "--min-lambda", "3", "--workers", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let summary: Value = serde_json::from_slice(&a.stderr).unwrap();
    assert_eq!(summary["by_n"]["9"], 0);
    let graphs: Vec<Graph> = String::from_utf8(a.stdout)
        .unwrap()
        .lines()
        .map(|l| decode_graph6(l).unwrap())
        .collect();
    assert_eq!(graphs.len() as u64, summary["classes"].as_u64().unwrap());
    let petersen = canonical_code(&Graph::petersen());
    assert!(graphs.iter().any(|g| canonical_code(g) == petersen));
}

#[test]
fn enumerate_budget_is_a_check_failure() {
    let out = run(&["enumerate", "--n", "9", "--max-nodes", "10"]);
    assert_eq!(out.status.code(), Some(1));
}
