use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn tdk(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tdk"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn tdk");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const NONZERO_B0: &str = r#"{"a": [1], "b": [0.5], "tail": {"rho": 1}}"#;

#[test]
fn validate_accepts_analytic_spec() {
    let out = tdk(&["validate", "-"], NONZERO_B0);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["analytic"], true);
    assert_eq!(v["all_a_nonzero"], true);
}

#[test]
fn zero_coefficient_is_rejected() {
    let out = tdk(&["validate", "-"], r#"{"a": [1, 0]}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_json_exits_one() {
    assert_eq!(tdk(&["validate", "-"], "{a").status.code(), Some(1));
    assert_eq!(tdk(&["validate", "-"], r#"{"a": [1], "c": 2}"#).status.code(), Some(1));
}

#[test]
fn missing_file_exits_one() {
    let out = tdk(&["validate", "/nonexistent/spec.json"], "");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(tdk(&["validate", "--bogus", "-"], "").status.code(), Some(64));
    assert_eq!(tdk(&["matrix", "--op", "xyz", "-"], "").status.code(), Some(64));
    assert_eq!(tdk(&[], "").status.code(), Some(64));
}

#[test]
fn help_exits_zero() {
    assert_eq!(tdk(&["--help"], "").status.code(), Some(0));
}

#[test]
fn matrix_output_shape() {
    let out = tdk(&["matrix", "--op", "mz", "--dim", "4", "-"], NONZERO_B0);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim"], 4);
    assert_eq!(v["exactness"], "closed_form");
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    assert_eq!(entries[2][0], serde_json::json!([0.5, 0.0]));
}

#[test]
fn shimorin_reports_witness() {
    let out = tdk(&["shimorin", "--max", "5", "-"], NONZERO_B0);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["basis"], "wandering");
    assert_eq!(v["verdict"]["value"], "false");
    assert_eq!(v["verdict"]["witness"]["m"], 1);
    assert_eq!(v["verdict"]["witness"]["n"], 3);
    assert_eq!(v["X"][1][3][0], 0.25);
}

#[test]
fn truncated_test_needs_truncated_spec() {
    let out = tdk(&["classify", "--test", "truncated", "-"], NONZERO_B0);
    assert_eq!(out.status.code(), Some(2));
    let out = tdk(
        &["classify", "--test", "truncated", "-"],
        r#"{"a": [1], "b": [0, 0, 1], "tail": {"rho": 1}}"#,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["order"], 2);
}

#[test]
fn quasinormal_constant_weight() {
    let out = tdk(&["classify", "--test", "quasinormal", "-"], r#"{"a": [1], "tail": {"rho": 0.5}}"#);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["value"], "true");
    assert!((v["r"].as_f64().unwrap() - 4.0).abs() < 1e-12);
}

#[test]
fn worked_examples_pass() {
    for name in ["sec4", "sec5", "sec9", "split-modulus"] {
        let out = tdk(&["examples", "--name", name], "");
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(json(&out)["checks_passed"], true, "{name}");
    }
    let v = json(&tdk(&["examples", "--name", "nonzero-b0"], ""));
    assert_eq!(v["X_13"], 0.25);
    let v = json(&tdk(&["examples", "--name", "b0-b1-one"], ""));
    assert!((v["tilde_X_13_abs"].as_f64().unwrap() - 1.0 / 5f64.sqrt()).abs() < 1e-9);
    assert_eq!(v["standard_tridiagonal"], true);
    assert_eq!(v["shimorin_aluthge_tridiagonal"], false);
}
