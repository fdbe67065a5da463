use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn mdcycle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdcycle")).args(args).output().unwrap()
}

fn mdcycle_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mdcycle"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mdcycle-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn solve_mt_and_verify_file() {
    let path = scratch("mt.json");
    let out = mdcycle(&["solve-mt", "--g", "2", "--n", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let cert: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert["kind"], "theorem-mt");
    assert_eq!(cert["m"], 7);

    let out = mdcycle(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out), vec![serde_json::json!({"status": "pass"})]);
}

#[test]
fn verify_rejects_perturbed_certificate() {
    let out = mdcycle(&["solve-mt", "--g", "2", "--n", "3"]);
    let mut cert: Value = serde_json::from_str(&stdout(&out)).unwrap();
    cert["q"][0] = Value::String("16".into());
    let out = mdcycle_stdin(&["verify", "-"], &cert.to_string());
    assert_eq!(out.status.code(), Some(1));
    let status = &json_lines(&out)[0];
    assert_eq!(status["status"], "fail");
    assert!(status["check"].is_string());
}

#[test]
fn verify_malformed_json_exits_with_parse_code() {
    let out = mdcycle_stdin(&["verify", "-"], "{\"kind\": ");
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn invalid_parameters_exit_two() {
    assert_eq!(mdcycle(&["solve-mt", "--g", "2", "--n", "2"]).status.code(), Some(2));
    assert_eq!(mdcycle(&["lemma2-scan", "--n", "4", "--i", "1"]).status.code(), Some(2));
    assert_eq!(mdcycle(&["expand", "--m", "3", "--i", "4"]).status.code(), Some(2));
}

#[test]
fn solve_p7_found_and_exhausted() {
    let out = mdcycle(&["solve-p7", "--g", "5", "--n", "5", "--i", "1", "--m-max", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let cert: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cert["functional_value"], "130");

    let out = mdcycle(&["solve-p7", "--g", "5", "--n", "5", "--i", "1", "--m-max", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_lines(&out)[0]["status"], "none");
}

#[test]
fn lemma2_scan_records() {
    let out = mdcycle(&["lemma2-scan", "--n", "5", "--i", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let records = json_lines(&out);
    let last = records.last().unwrap();
    assert_eq!(last["verdict"], "non-member");
    assert_eq!(last["params"], serde_json::json!({"n": 5, "i": 1, "m": 6}));
}

#[test]
fn independence_scan_records() {
    let out = mdcycle(&["independence-scan", "--n-max", "4", "--m-max", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let records = json_lines(&out);
    assert!(!records.is_empty());
    for r in &records {
        assert_eq!(r["verdict"], "independent");
        let t = r["params"]["t"].as_u64().unwrap();
        assert!(2 * t < r["params"]["m"].as_u64().unwrap());
        assert_eq!(r["rank"].as_u64().unwrap(), t + 2);
    }
}

#[test]
fn expand_prints_both_forms() {
    let out = mdcycle(&["expand", "--m", "5", "--i", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("factorized: 5*x^1*(1+x)^4 60*x^2*(1+x)^3 60*x^3*(1+x)^2"));
    assert!(text.lines().any(|l| l.starts_with("expanded: ")));
}

#[test]
fn pushforward_with_brute_check() {
    let out = mdcycle(&["pushforward", "--q", "15,-5,1,0,0,0,0", "--n", "3", "--brute"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["m"], 3);
}

#[test]
fn pushforward_bad_rational_is_an_error() {
    let out = mdcycle(&["pushforward", "--q", "1,x", "--n", "1"]);
    assert_ne!(out.status.code(), Some(0));
}
