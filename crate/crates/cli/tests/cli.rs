use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn linarr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linarr")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn realize_to(dir: &Path, family: &str, file: &str) -> String {
    let path = dir.join(file);
    let p = path.to_str().unwrap().to_string();
    let out = linarr(&["realize", family, "--out", &p]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

fn write(dir: &Path, file: &str, text: &str) -> String {
    let path = dir.join(file);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn realize_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let p = realize_to(dir.path(), "L(5,3)", "l53.json");
    let v = json(&linarr(&["analyze", &p, "--certified"]));
    assert_eq!(v["input"]["label"], "L(5,3)");
    assert_eq!(v["invariants"]["tau"], 11);
    assert_eq!(v["invariants"]["mdr"], 2);
    assert_eq!(v["invariants"]["classification"], "nearly_free");
    assert_eq!(v["invariants"]["exponents"], serde_json::json!([2, 3]));
    assert_eq!(v["stratum"]["local_dim"], 9);
    assert_eq!(v["lattice"]["census"]["3"], 1);
    assert_eq!(v["provenance"]["certified_ranks"], true);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let p = realize_to(dir.path(), "Ltilde(3,3)", "a.json");
    let first = linarr(&["analyze", &p]);
    let second = linarr(&["analyze", &p]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn ziegler_prime_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let p = realize_to(dir.path(), "ziegler_A'", "z.json");
    let v = json(&linarr(&["analyze", &p]));
    assert_eq!(v["invariants"]["tau"], 42);
    assert_eq!(v["invariants"]["mdr"], 6);
    assert_eq!(v["invariants"]["saturation"]["gap_dims"][9], 4);
    assert_eq!(v["terao"]["summary"], "not free, Terao vacuous");
}

#[test]
fn compare_ziegler_pair() {
    let dir = tempfile::tempdir().unwrap();
    let a = realize_to(dir.path(), "ziegler_A", "a.json");
    let b = realize_to(dir.path(), "ziegler_A'", "b.json");
    let v = json(&linarr(&["compare", &a, &b]));
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["invariants"]["mdr"], serde_json::json!([5, 6]));
    let differing: Vec<&str> = v["differing_invariants"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(differing.contains(&"mdr"));
    assert!(!differing.contains(&"tau"));
    assert_eq!(v["milnor_dims_differ_at"][0]["degree"], 13);
}

#[test]
fn compare_reports_non_isomorphic_lattices() {
    let dir = tempfile::tempdir().unwrap();
    let a = realize_to(dir.path(), "Ltilde(3,3)", "a.json");
    let b = realize_to(dir.path(), "Ltilde_prime(3,3)", "b.json");
    let v = json(&linarr(&["compare", &a, &b, "--certified"]));
    assert_eq!(v["isomorphic"], false);
    assert_eq!(v["milnor_dims_differ_at"], serde_json::json!([]));
}

#[test]
fn integer_and_fraction_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t.json", r#"{"format_version":1,"lines":[[1,0,0],["0","1/2",0],[0,0,"-3"],["1","1","1"]]}"#);
    let v = json(&linarr(&["analyze", &p, "--variant", "Eprime"]));
    assert_eq!(v["invariants"]["tau"], 6);
    assert_eq!(v["stratum"]["variant"], "Eprime");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{");
    assert_eq!(linarr(&["analyze", &bad]).status.code(), Some(2));
    let extra = write(dir.path(), "extra.json", r#"{"format_version":1,"lines":[[1,0,0]],"colour":1}"#);
    assert_eq!(linarr(&["analyze", &extra]).status.code(), Some(2));
    let prop = write(dir.path(), "p.json", r#"{"format_version":1,"lines":[[1,0,0],[0,1,0],[0,0,1],[1,1,1],[2,0,0]]}"#);
    let out = linarr(&["analyze", &prop]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lines 1 and 5 proportional"));
    let zero = write(dir.path(), "z.json", r#"{"format_version":1,"lines":[[1,0,0],[0,0,0]]}"#);
    assert_eq!(linarr(&["analyze", &zero]).status.code(), Some(3));
    let out = linarr(&["realize", "L(3,5)"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m <= d"));
    assert_eq!(linarr(&["realize", "monomial(3)"]).status.code(), Some(4));
    assert_eq!(linarr(&["census", "7"]).status.code(), Some(4));
    assert_eq!(linarr(&["analyze", &prop, "--variant", "F"]).status.code(), Some(4));
}

#[test]
fn census_four_passes() {
    let out = linarr(&["census", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("census d=4"));
    assert!(text.contains("census d=11"));
    assert!(!text.contains("FAIL"));
    let v = json(&linarr(&["census", "4", "--json"]));
    assert_eq!(v["all_pass"], true);
}
