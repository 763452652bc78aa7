use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twobridge")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).expect("JSON on stdout");
    (out.status.code().expect("exit code"), v)
}

#[test]
fn euclidean_expansion() {
    let (code, v) = json(&["cf", "5/17"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["result"]["cf"], "[3,2,2]");
}

#[test]
fn text_output() {
    let out = run(&["--text", "cf", "5/17"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "[3,2,2]");
}

#[test]
fn orbit_membership_with_certificate() {
    let (code, v) = json(&["orbit", "1/9", "--target", "1/3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["membership"]["verdict"], "ORBIT_R");
    assert_eq!(v["result"]["membership"]["witness"]["kind"], "certificate");
}

#[test]
fn non_candidate_is_a_verdict_not_an_error() {
    let (code, v) = json(&["verify", "2/5", "--target", "1/3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "NOT_CANDIDATE");
}

#[test]
fn verify_is_reproducible_for_a_seed() {
    let args = ["verify", "1/9", "--target", "1/3", "--seed", "11"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["status"], "CANDIDATE_VERIFIED");
}

#[test]
fn regression_table_passes() {
    let (code, v) = json(&["table1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["all_pass"], true);
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 7);
}

#[test]
fn tower_degrees() {
    let (code, v) = json(&["tower", "2/5", "--steps", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["alexander_degrees"], serde_json::json!([2, 8, 26]));
}

#[test]
fn bad_input_exits_one() {
    let (code, v) = json(&["cf", "1/0x"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "error");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["orbit", "1/9"]).status.code(), Some(2));
}
