//! End-to-end runs of the `superpattern` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const CHAIN3: &str = r#"{"elements": ["1", "2", "3"], "relations": [["1", "2"], ["2", "3"]]}"#;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_superpattern"));
    c.env_remove("SUPERPATTERN_CAPS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap_or_else(|_| panic!("stderr is JSON: {}", String::from_utf8_lossy(&o.stderr)))
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn chain3_file(dir: &TempDir) -> String {
    write(dir.path(), "chain3.json", CHAIN3).to_str().unwrap().to_owned()
}

#[test]
fn enumerate_counts_chain3() {
    let dir = TempDir::new().unwrap();
    let o = run(&["enumerate", "--poset", &chain3_file(&dir), "--count-only"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "5\n");
}

#[test]
fn enumerate_lists_labels_identically_on_every_run() {
    let dir = TempDir::new().unwrap();
    let path = chain3_file(&dir);
    let a = run(&["enumerate", "--poset", &path]);
    let b = run(&["enumerate", "--poset", &path]);
    assert_eq!(a.stdout, b.stdout);
    let labels: Vec<Value> = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(labels.len(), 5);
    assert_eq!(labels[0], serde_json::json!([]));
    let csv = run(&["enumerate", "--poset", &path, "--format", "csv"]);
    assert_eq!(stdout(&csv).lines().count(), 6);
}

#[test]
fn inline_poset_json_is_accepted() {
    let o = run(&["enumerate", "--poset", CHAIN3, "--count-only"]);
    assert_eq!(stdout(&o), "5\n");
}

#[test]
fn antipode_closed_form_shows_the_remark_coefficient() {
    let dir = TempDir::new().unwrap();
    let path = chain3_file(&dir);
    let closed = run(&["antipode", "--poset", &path, "--basis", "chi", "--label", "[[1,3]]", "--method", "closed-form"]);
    assert!(closed.status.success(), "{}", String::from_utf8_lossy(&closed.stderr));
    let text = stdout(&closed);
    assert!(text.contains("(q-1)*(q-2)"));
    let json: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(chain_unit_coeff(&json), "q*(q-1)*(q-2)");
    let takeuchi = run(&["antipode", "--poset", &path, "--basis", "chi", "--label", "[[1,3]]", "--method", "takeuchi"]);
    assert_eq!(closed.stdout, takeuchi.stdout);
    let at_two = run(&["antipode", "--poset", &path, "--basis", "chi", "--label", "[[1,3]]", "--q", "2"]);
    let json: Value = serde_json::from_slice(&at_two.stdout).unwrap();
    assert_eq!(chain_unit_coeff(&json), "0");
}

/// Coefficient of `χ^∅` over the chain `1 < 2 < 3`.
fn chain_unit_coeff(json: &Value) -> Value {
    json["terms"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["label"] == serde_json::json!([]) && t["ambient"]["relations"] == serde_json::json!([["1", "2"], ["2", "3"]]))
        .expect("a χ^∅ term over the chain")["coeff"]
        .clone()
}

#[test]
fn antipode_methods_agree_on_the_diamond() {
    let diamond = r#"{"elements": ["a","b","c","d"], "relations": [["a","b"],["a","c"],["b","d"],["c","d"]]}"#;
    let args = |m: &'static str| ["antipode", "--poset", diamond, "--basis", "delta-subgroup", "--method", m];
    let closed = run(&args("closed-form"));
    let takeuchi = run(&args("takeuchi"));
    assert!(closed.status.success());
    assert_eq!(closed.stdout, takeuchi.stdout);
}

#[test]
fn restrict_example() {
    let dir = TempDir::new().unwrap();
    let sub = write(dir.path(), "sub.json", r#"{"elements": [1, 2, 3], "relations": [[1, 2]]}"#);
    let o = run(&["restrict", "--poset", &chain3_file(&dir), "--subposet", sub.to_str().unwrap(), "--label", r#"[["1","3"]]"#]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let json: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["basis"], "chi");
    let terms = json["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert!(terms.iter().all(|t| t["coeff"] == "q*(q-1)"));
}

#[test]
fn product_and_coproduct_examples() {
    let dir = TempDir::new().unwrap();
    let left = write(
        dir.path(),
        "left.json",
        r#"{"terms": [{"ambient": {"elements": ["1","2"], "relations": [["1","2"]]}, "basis": "delta", "label": [["1","2"]], "coeff": "1"}]}"#,
    );
    let right = write(
        dir.path(),
        "right.json",
        r#"{"terms": [{"ambient": {"elements": ["3"], "relations": []}, "basis": "delta", "label": [], "coeff": "1"}]}"#,
    );
    let o = run(&["product", "--left", left.to_str().unwrap(), "--right", right.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let xy: Value = serde_json::from_slice(&o.stdout).unwrap();
    let labels: Vec<&Value> = xy["terms"].as_array().unwrap().iter().map(|t| &t["label"]).collect();
    assert_eq!(labels, [&serde_json::json!([["1", "2"]]), &serde_json::json!([["1", "2"], ["2", "3"]])]);

    let element = write(
        dir.path(),
        "x.json",
        r#"{"terms": [{"ambient": {"elements": ["1","2","3"], "relations": [["1","2"],["2","3"]]}, "basis": "delta", "label": [["1","3"]], "coeff": "1"}]}"#,
    );
    let o = run(&["coproduct", "--element", element.to_str().unwrap(), "--split", r#"["1","2"]"#]);
    assert!(o.status.success());
    let d: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(d["terms"], serde_json::json!([]));
    assert_eq!(d["blocks"], serde_json::json!([["1", "2"], ["3"]]));
}

#[test]
fn table_outputs() {
    let dir = TempDir::new().unwrap();
    let path = chain3_file(&dir);
    let o = run(&["table", "--poset", &path]);
    let json: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["labels"].as_array().unwrap().len(), 5);
    assert_eq!(json["determinant"]["formula"], "q^7");
    assert!(json["determinant"]["sign"].is_i64());
    let csv = run(&["table", "--poset", &path, "--format", "csv", "--q", "2"]);
    let text = stdout(&csv);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[1], "[],1,1,1,1,1");
}

#[test]
fn lattice_of_chain2() {
    let o = run(&["lattice", "--poset", r#"{"elements": [1, 2], "relations": [[1, 2]]}"#]);
    let json: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["coideals"].as_array().unwrap().len(), 2);
    assert_eq!(json["meet_irreducibles"].as_array().unwrap().len(), 1);
}

#[test]
fn primitives_on_atomic_and_non_atomic_pairs() {
    let o = run(&["primitives", "--poset", r#"{"elements": ["1"]}"#]);
    assert!(o.status.success());
    let list: Vec<Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(list.len(), 1);
    assert_eq!(list[0]["generator"]["terms"][0]["coeff"], "1");
    let o = run(&["primitives", "--poset", r#"{"elements": [1, 2], "relations": [[1, 2]]}"#]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["kind"], "invalid");
}

#[test]
fn verify_axioms_passes() {
    let o = run(&["verify", "--suite", "axioms", "--max-atoms", "3", "--primes", "2,3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("axioms: PASS")));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let path = chain3_file(&dir);
    let nested = run(&["antipode", "--poset", &path, "--basis", "chi", "--label", "[[1,3],[2,3]]"]);
    assert_eq!(nested.status.code(), Some(2));
    assert_eq!(stderr_json(&nested)["error"]["kind"], "invalid");
    let usage = run(&["frobnicate"]);
    assert_eq!(usage.status.code(), Some(2));
    assert_eq!(stderr_json(&usage)["error"]["kind"], "usage");
    let prime = run(&["verify", "--suite", "catalan", "--primes", "2,4"]);
    assert_eq!(prime.status.code(), Some(2));
    assert_eq!(stderr_json(&prime)["error"]["kind"], "config");
    let garbage = run(&["enumerate", "--poset", "{not json"]);
    assert_eq!(garbage.status.code(), Some(2));
    assert_eq!(stderr_json(&garbage)["error"]["kind"], "parse");
}

#[test]
fn caps_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let o = bin()
        .args(["enumerate", "--poset", &chain3_file(&dir)])
        .env("SUPERPATTERN_CAPS", "partitions=2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["kind"], "cap");
    let o = bin()
        .args(["enumerate", "--poset", &chain3_file(&dir)])
        .env("SUPERPATTERN_CAPS", "colours=2")
        .output()
        .unwrap();
    assert_eq!(stderr_json(&o)["error"]["kind"], "config");
}
