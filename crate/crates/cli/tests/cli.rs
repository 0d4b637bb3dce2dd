use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitforce")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn write(p: &Path, v: &Value) {
    std::fs::write(p, serde_json::to_string(v).unwrap()).unwrap();
}

#[test]
fn identities_all_pass() {
    let o = run(&["identities"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines.iter().all(|l| l.starts_with("PASS")));
    assert!(text.contains("2*d^2*t*(3*d^2-t)"));
}

#[test]
fn unit_build_is_two_points() {
    let o = run(&["build", "--dsq", "1/1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 2);
    assert_eq!(v["unit_edges"], serde_json::json!([[0, 1]]));
    assert_eq!(v["dsq"], "1");
}

#[test]
fn build_verify_replay_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    let ws = w.to_str().unwrap();
    assert_eq!(run(&["build", "--dsq", "3/4", "--out", ws]).status.code(), Some(0));
    assert_eq!(run(&["verify", ws]).status.code(), Some(0));
    let o = run(&["replay", ws]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let good = read(&w);
    let bad = dir.path().join("bad.json");
    let bs = bad.to_str().unwrap();

    let mut v = good.clone();
    v["dsq"] = "1/2".into();
    write(&bad, &v);
    assert_eq!(run(&["verify", bs]).status.code(), Some(1));

    let mut v = good.clone();
    let steps = v["certificate"]["steps"].as_array_mut().unwrap();
    let last = steps.len() - 1;
    steps[last]["value"] = "1".into();
    write(&bad, &v);
    let o = run(&["replay", bs]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["passed"], false);

    let mut v = good;
    v["unit_edges"].as_array_mut().unwrap().pop();
    write(&bad, &v);
    assert_eq!(run(&["replay", bs]).status.code(), Some(1));
}

#[test]
fn export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    let e = dir.path().join("e.json");
    let (ws, es) = (w.to_str().unwrap(), e.to_str().unwrap());
    assert_eq!(run(&["build", "--dsq", "2", "--out", ws, "--approx"]).status.code(), Some(0));
    assert!(read(&w)["approx"]["points"].is_array());
    assert_eq!(run(&["export", ws, "--format", "json", "--out", es]).status.code(), Some(0));
    assert_eq!(run(&["verify", es]).status.code(), Some(0));
    assert_eq!(run(&["replay", es]).status.code(), Some(0));
    let mut original = read(&w);
    original.as_object_mut().unwrap().remove("approx");
    assert_eq!(read(&e), original);
    let dot = stdout(&run(&["export", ws, "--format", "dot"]));
    assert!(dot.starts_with("graph witness {"));
    assert!(dot.contains("style=dashed, label=\"2\""));
}

#[test]
fn complex_null_case() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("c.json");
    let ws = w.to_str().unwrap();
    assert_eq!(run(&["build", "--from", "0,0", "--to", "1,i", "--out", ws]).status.code(), Some(0));
    let v = read(&w);
    assert_eq!(v["case_tag"], "Null");
    assert_eq!(v["psi_target"], "0");
    assert_eq!(run(&["verify", ws]).status.code(), Some(0));
    assert_eq!(run(&["replay", ws]).status.code(), Some(0));
    let steps = v["certificate"]["steps"].as_array().unwrap();
    assert!(steps.iter().any(|s| s["kind"] == "distinct" && s["values"] == serde_json::json!(["1", "3"])));
}

/// Fallback-chain edge and point counts of `sqrt(n)` from the gadget
/// recurrences: unit 1 edge; sqrt3 11 child copies plus 5 points; double
/// 7 + 2 copies plus 3 points; pyth 2 + 2 + 1 copies plus 2 points.
fn chain_counts(n: u64) -> (u128, u128) {
    let (unit, mut cur, mut k) = ((1u128, 0u128), (1u128, 0u128), 0);
    while 4u64.pow(k) < n {
        let s3 = (11 * cur.0, 5 + 11 * cur.1);
        cur = (7 * cur.0 + 2 * s3.0, 3 + 7 * cur.1 + 2 * s3.1);
        k += 1;
    }
    let two = {
        let s3 = (11, 5);
        (7 + 2 * s3.0, 3 + 2 * s3.1)
    };
    for _ in n..4u64.pow(k) {
        cur = (2 * unit.0 + 2 * cur.0 + two.0, 2 + 2 * unit.1 + 2 * cur.1 + two.1);
    }
    (cur.0, cur.1 + 2)
}

#[test]
fn stats_match_recurrence() {
    let o = run(&["stats", "--dsq-list", "2,3,4", "--paper-chain"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<String>> = text.lines().skip(1).map(|l| l.split_whitespace().map(String::from).collect()).collect();
    let mut prev = u128::MAX;
    for (row, n) in rows.iter().zip([2u64, 3, 4]) {
        let (edges, points) = chain_counts(n);
        assert_eq!(row[0], n.to_string());
        assert_eq!(row[1], points.to_string());
        assert_eq!(row[2], edges.to_string());
        assert!(points <= prev);
        prev = points;
    }
    let o = run(&["stats", "--dsq-list", "17"]);
    let row: Vec<u128> = stdout(&o).lines().nth(1).unwrap().split_whitespace().skip(1).map(|x| x.parse().unwrap()).collect();
    assert!(row[1] < row[3]);
}

#[test]
fn usage_errors_exit_two_with_json() {
    for args in [&["build", "--dsq", "0"][..], &["build", "--dsq", "x/y"], &["frobnicate"], &["build"]] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err: Value = serde_json::from_slice(&o.stderr).unwrap();
        assert_eq!(err["error"], "usage");
    }
    let o = run(&["verify", "/nonexistent/w.json"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "io");
}
