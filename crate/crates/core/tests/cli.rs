//! The `qg` binary on the fixture scenario.

use std::io::Write;
use std::process::Command;

use serde_json::Value;

const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/fixture.json");

fn qg(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qg")).args(args).output().expect("qg runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn op(args: &[&str]) -> Value {
    let mut full = vec!["op", "--scenario", FIXTURE];
    full.extend_from_slice(args);
    let (code, text) = qg(&full);
    assert_eq!(code, 0, "{text}");
    serde_json::from_str(&text).unwrap()
}

#[test]
fn validates_and_reports_classes() {
    assert_eq!(qg(&["validate", "--scenario", FIXTURE]), (0, "valid\n".to_string()));
    let (code, text) = qg(&["class", "--scenario", FIXTURE, "--loop", "a"]);
    assert_eq!((code, text.trim()), (0, "g1.g2^-1.y1^-1"));
    let (_, text) = qg(&["class", "--scenario", FIXTURE, "--loop", "e"]);
    assert_eq!(text.trim(), "1");
}

#[test]
fn fixture_operations() {
    assert_eq!(op(&["bracket", "a", "a2"]), serde_json::json!({}));
    assert_eq!(op(&["bracket-omega", "a", "a2"]), serde_json::json!({"g1.g2^-1.y1^-1.g1.g2^-1.y1^-1": "1"}));
    assert_eq!(op(&["mu", "--m", "1", "--gate", "G1", "a"]), serde_json::json!({"g1.g2^-1.y1^-1": "1"}));
    assert_eq!(op(&["gamma", "--m", "1", "a"]), serde_json::json!({}));
    assert_eq!(op(&["nu-omega", "w2"]), serde_json::json!({"g1.g2^-1.y1^-1 ⊗ g1.g2^-1.y1^-1": "2"}));
    assert_eq!(op(&["nu", "w2"]), serde_json::json!({}));
    assert_eq!(op(&["zeta", "--gate", "G1", "a", "a2"]), serde_json::json!({"g1.g2^-1.y1^-1 ⊗ g1.g2^-1.y1^-1": "1"}));
}

#[test]
fn output_is_deterministic() {
    let args = ["op", "--scenario", FIXTURE, "coboundary", "w2", "a", "--seed", "5"];
    assert_eq!(qg(&args), qg(&args));
    let v = ["verify", "--trials", "3", "--seed", "9", "--json"];
    assert_eq!(qg(&v), qg(&v));
}

#[test]
fn simplify_removes_the_crossing() {
    let (code, text) = qg(&["simplify", "--scenario", FIXTURE, "--loop", "w2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["self_intersections"], 0);
    assert_eq!(v["class"], "g1.g2^-1.y1^-1.g1.g2^-1.y1^-1");
}

#[test]
fn input_errors_exit_with_two() {
    let text = std::fs::read_to_string(FIXTURE).unwrap().replace("\"1/10\", \"1/5\"", "\"1/5\", \"3/2\"");
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    let path = f.path().to_str().unwrap();
    let (code, out) = qg(&["validate", "--scenario", path]);
    assert_eq!(code, 2);
    assert!(out.contains("G1"), "{out}");
    assert_eq!(qg(&["op", "--scenario", FIXTURE, "frobnicate", "a"]).0, 2);
    assert_eq!(qg(&["op", "--scenario", FIXTURE, "bracket", "a"]).0, 2);
    assert_eq!(qg(&["verify", "--theorem", "nonsense"]).0, 2);
}

#[test]
fn verifier_passes_and_catches_a_flipped_sign() {
    let (code, text) = qg(&["verify", "--theorem", "jacobi", "--trials", "10"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.starts_with("PASS jacobi"));
    let (code, text) = qg(&["verify", "--theorem", "omega-indep", "--trials", "20", "--flip-gate-sign"]);
    assert_eq!(code, 1);
    assert!(text.contains("first failure"), "{text}");
}
