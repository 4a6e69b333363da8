use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn abmod(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_abmod"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    // the child may exit before reading its input
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).unwrap()
}

const PRES: &str = r#"{"lambda1": "7/2", "p": [2, 3], "S": [["1", "0", "1"], ["1", "0", "0", "1/2"]], "order": 22}"#;

#[test]
fn invariants_of_a_bare_presentation() {
    let out = abmod(&["invariants"], PRES);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["delta"], 1);
    assert_eq!(v["d"], 3);
    assert_eq!(v["bernstein_roots"], serde_json::json!(["-13/2", "-7/2", "-3/2"]));
}

#[test]
fn pushforward_job_keeps_invariants() {
    let job = format!(r#"{{"command": "pushforward", "theta": ["1", "1"], "input": {PRES}}}"#);
    let out = abmod(&["pushforward"], &job);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out.stdout);
    assert_eq!(v["presentation"]["lambda1"], "7/2");
    assert_eq!(v["presentation"]["p"], serde_json::json!([2, 3]));
}

#[test]
fn pushforward_without_theta_is_a_usage_error() {
    let out = abmod(&["pushforward"], PRES);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"], "validation_error");
}

#[test]
fn zero_denominator_is_a_parse_error() {
    let out = abmod(&["bernstein"], r#"{"lambda1": "1/0", "p": [], "S": [], "order": 8}"#);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"], "parse_error");
}

#[test]
fn unknown_command_and_suite() {
    assert_eq!(abmod(&["frobnicate"], PRES).status.code(), Some(2));
    assert_eq!(abmod(&["verify", "--suite", "nope"], "").status.code(), Some(2));
}

#[test]
fn order_below_guard_is_rejected() {
    let out = abmod(&["jh", "--order", "4"], PRES);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mathematical_failure_exits_one() {
    // E_1 ⊕ E_1 is not monogenic
    let sum = r#"{"rank": 2, "order": 8, "action": [[["0", "1"], []], [[], ["0", "1"]]]}"#;
    let out = abmod(&["jh", "--guard", "2"], sum);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out.stderr)["error"], "not_a_fresco");
}

#[test]
fn verify_suite_reports_cases() {
    let out = abmod(&["verify", "--suite", "algebra", "--seed", "3"], "");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["seed"], 3);
}
