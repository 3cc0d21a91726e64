use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kapranov"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn equations_text_and_json_agree() {
    let text = stdout(&run(&["equations", "--n", "4"]));
    let json: Value = serde_json::from_str(&stdout(&run(&["equations", "--n", "4", "--format", "json"]))).unwrap();
    assert_eq!(text.lines().count(), 15);
    assert_eq!(json["count"], 15);
    let first = &json["generators"][0];
    assert!(text.lines().next().unwrap().ends_with(&format!("{} = 0", first["polynomial"].as_str().unwrap())));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["random-curve", "--n", "6", "--seed", "11", "--nodes", "3"][..],
        &["verify", "--n", "4", "--trials", "12", "--seed", "3"][..],
        &["--json", "verify", "--n", "3", "--trials", "8", "--seed", "5", "--checks", "nullity,round-trip"][..],
    ] {
        let a = run(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn embed_reconstruct_embed_is_a_fixed_point() {
    for (seed, nodes) in [(1, 0), (2, 2), (3, 5), (4, 3)] {
        let curve = stdout(&run(&["random-curve", "--n", "5", "--seed", &seed.to_string(), "--nodes", &nodes.to_string()]));
        let p1 = run_stdin(&["embed", "--curve", "-"], &curve);
        assert!(p1.status.success());
        let back = run_stdin(&["reconstruct", "--point", "-"], &stdout(&p1));
        assert!(back.status.success(), "{}", String::from_utf8_lossy(&back.stderr));
        let p2 = run_stdin(&["embed", "--curve", "-"], &stdout(&back));
        assert_eq!(p1.stdout, p2.stdout);
    }
}

#[test]
fn check_reports_violations_with_exit_two() {
    let bad = scratch("bad.json", r#"{"n": 2, "factors": [["1", "1"], ["1", "2", "3"]]}"#);
    let o = run(&["check", "--point", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["member"], false);
    assert_eq!(v["violated"].as_array().unwrap().len(), 1);

    let o = run(&["--json", "reconstruct", "--point", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(err["error"].is_string() && err["violated"].is_array());
}

#[test]
fn tangent_reports_both_methods() {
    let curve = stdout(&run(&["random-curve", "--n", "5", "--seed", "9", "--nodes", "2"]));
    let o = run_stdin(&["tangent", "--curve", "-"], &curve);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["jacobian"]["nullity"], 5);
    assert_eq!(v["comparison"]["equations"], 10);
    assert_eq!(v["comparison"]["holds"], true);
    assert_eq!(v["constructive"]["levels"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["equations", "--n", "0"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--n", "3", "--checks", "bogus"]).status.code(), Some(1));
    assert_eq!(run(&["embed", "--curve", "/nonexistent/curve.json"]).status.code(), Some(1));
    let garbage = scratch("garbage.json", "{not json");
    assert_eq!(run(&["embed", "--curve", garbage.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn closed_stdout_is_not_a_crash() {
    let mut child = bin().args(["equations", "--n", "9"]).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    drop(child.stdout.take());
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
