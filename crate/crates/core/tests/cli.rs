use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bnpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bnpoly")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn census_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.json");
    let out = bnpoly(&["census", "--n", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let r = read_json(&path);
    assert_eq!(r["counts"]["classes"], 185);
    assert_eq!(r["passed"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&bnpoly(&["census"])), 2);
    assert_eq!(code(&bnpoly(&["example", "--id", "9"])), 2);
    assert_eq!(code(&bnpoly(&["census", "--n", "9"])), 2);
    assert_eq!(code(&bnpoly(&["scan", "--n", "3", "--framework", "q", "--families", "specific"])), 2);
    assert_eq!(code(&bnpoly(&["scan", "--n", "3", "--framework", "u", "--families", "kappa-specific"])), 2);
    // the converse scan at five variables needs --long-run
    assert_eq!(code(&bnpoly(&["scan", "--n", "5", "--framework", "u", "--families", "specific", "--box", "01"])), 2);
    assert_eq!(code(&bnpoly(&["encode", "--graph", "/nonexistent.json", "--as", "eta"])), 2);
}

#[test]
fn failed_verification_exits_one_with_witnesses() {
    // κ-specific rows alone keep fractional-orbit lattice points
    let out = bnpoly(&["scan", "--n", "3", "--framework", "c", "--families", "kappa-specific"]);
    assert_eq!(code(&out), 1);
    let r = json(&out);
    assert_eq!(r["passed"], false);
    assert!(!r["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn scan_csv_lists_satisfying_points() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("points.csv");
    let out = bnpoly(&[
        "scan", "--n", "3", "--framework", "c", "--families", "kappa-specific,cluster-c", "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let mut rdr = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(rdr.headers().unwrap().len(), 4);
    assert_eq!(rdr.records().count(), 11);
}

#[test]
fn encode_and_transform_agree() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    std::fs::write(&graph, r#"{"labels": ["a","b","c"], "edges": [["a","b"], ["c","b"]]}"#).unwrap();
    let g = graph.to_str().unwrap();
    let eta = dir.path().join("eta.json");
    assert_eq!(code(&bnpoly(&["encode", "--graph", g, "--as", "eta", "--out", eta.to_str().unwrap()])), 0);
    let c = json(&bnpoly(&["encode", "--graph", g, "--as", "characteristic"]));
    assert_eq!(c["entries"], serde_json::json!({"a,b": 1, "b,c": 1, "a,b,c": 1}));
    let via = json(&bnpoly(&["transform", "--from", "eta", "--to", "c", "--in", eta.to_str().unwrap()]));
    assert_eq!(via, c);

    let u_path = dir.path().join("u.json");
    let u = bnpoly(&["encode", "--graph", g, "--as", "u", "--out", u_path.to_str().unwrap()]);
    assert_eq!(code(&u), 0);
    let back = json(&bnpoly(&["transform", "--from", "u", "--to", "c", "--in", u_path.to_str().unwrap()]));
    assert_eq!(back, c);
}

#[test]
fn constraints_in_lp_format() {
    let dir = tempfile::tempdir().unwrap();
    let lp = dir.path().join("sys.lp");
    let out = bnpoly(&[
        "constraints", "--n", "3", "--framework", "u", "--families", "equality,specific", "--format", "lp", "--out",
        lp.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&lp).unwrap();
    assert!(text.contains("Subject To"));
    assert!(text.trim_end().ends_with("End"));
    let sys = json(&bnpoly(&["constraints", "--n", "3", "--framework", "u", "--families", "equality,specific"]));
    assert_eq!(sys["rows"].as_array().unwrap().len(), 4 + 18);
}

#[test]
fn rays_round_trip_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let rays = dir.path().join("rays.json");
    assert_eq!(code(&bnpoly(&["rays", "--n", "4", "--method", "dd", "--out", rays.to_str().unwrap()])), 0);
    let out = bnpoly(&["compare-relaxations", "--n", "3"]);
    assert_eq!(code(&out), 0);
    let out = bnpoly(&["soundness", "--n", "4", "--rays", rays.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["parameters"]["nonspecific"], true);
}

#[test]
fn matrix_dump_and_checks() {
    let out = bnpoly(&["matrix", "--which", "E", "--n", "3"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() > 1);
    assert_eq!(code(&bnpoly(&["matrix", "--which", "A", "--n", "3", "--check", "hnf"])), 0);
    assert_eq!(code(&bnpoly(&["matrix", "--which", "b", "--n", "3", "--check", "products"])), 0);
    assert_eq!(code(&bnpoly(&["matrix", "--which", "E", "--n", "3", "--check", "tu"])), 0);
}

#[test]
fn decompose_reports_parts_or_violation() {
    let dir = tempfile::tempdir().unwrap();
    let y = dir.path().join("y.json");
    std::fs::write(&y, r#"{"labels": ["a","b","c"], "entries": {"a,b": 1, "a,c": 1, "a,b,c": 2}}"#).unwrap();
    let out = bnpoly(&["decompose", "--y", y.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["parts"].as_array().unwrap().len(), 2);
    std::fs::write(&y, r#"{"labels": ["a","b","c"], "entries": {"a,b": 1, "a,c": 1, "a,b,c": -1}}"#).unwrap();
    assert_eq!(code(&bnpoly(&["decompose", "--y", y.to_str().unwrap()])), 1);
}

#[test]
fn every_example_exits_zero() {
    for id in 1..=8 {
        assert_eq!(code(&bnpoly(&["example", "--id", &id.to_string()])), 0, "example {id}");
    }
}
