//! End-to-end checks of the compiled binary: exit codes, single-document
//! JSON output, and the documented report shapes.

use std::process::{Command, Output};

fn braidrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidrep"))
        .args(args)
        .env_remove("BRAIDREP_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    assert_eq!(lines.len(), 1, "exactly one JSON document on stdout: {text}");
    serde_json::from_str(lines[0]).expect("stdout is JSON")
}

#[test]
fn gaussian_ybe_exit_zero() {
    let out = braidrep(&["gaussian", "--m", "3", "--check", "ybe"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["check"], "ybe");
    assert_eq!(doc["m"], 3);
    assert_eq!(doc["holds"], true);
}

#[test]
fn braid_eval_identity() {
    let out = braidrep(&["braid", "eval", "--word", "s1 s1^-1", "--bvs", "flip2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let entries = doc["matrix"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 16);
}

#[test]
fn image_gaussian_regression_order() {
    let out = braidrep(&["image", "--bvs", "gaussian:2", "--n", "3", "--budget", "1000000"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["status"], "Finite");
    assert_eq!(doc["order"], 48);
}

#[test]
fn budget_exceeded_exit_three() {
    let out = braidrep(&["image", "--bvs", "discussion-example:11", "--budget", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let doc = stdout_json(&out);
    assert_eq!(doc["status"], "BudgetExceeded");
}

#[test]
fn env_budget_applies() {
    let out = Command::new(env!("CARGO_BIN_EXE_braidrep"))
        .args(["image", "--bvs", "flip2", "--n", "3"])
        .env("BRAIDREP_BUDGET", "123")
        .output()
        .unwrap();
    let doc = stdout_json(&out);
    assert_eq!(doc["budget"], 123);
}

#[test]
fn usage_error_exit_four() {
    let out = braidrep(&["gaussian", "--check", "ybe"]); // missing --m
    assert_eq!(out.status.code(), Some(4));
    assert!(!out.stderr.is_empty());
}

#[test]
fn bad_input_file_exit_four() {
    let out = braidrep(&["settheoretic", "--file", "/nonexistent.json", "--check", "ybe"]);
    assert_eq!(out.status.code(), Some(4));
    let doc = stdout_json(&out);
    assert!(doc["error"].is_string());
}

#[test]
fn deterministic_output_bytes() {
    let args = ["image", "--bvs", "discussion-example:5", "--projective"];
    let a = braidrep(&args);
    let b = braidrep(&args);
    // elapsed_ms may differ; compare documents with it removed
    let strip = |o: &Output| {
        let mut d = stdout_json(o);
        d.as_object_mut().unwrap().remove("elapsed_ms");
        d
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn help_exits_zero() {
    let out = braidrep(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}
