//! End-to-end runs of the `qmincut` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qmincut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmincut"))
        .args(args)
        .env_remove("QMINCUT_LOG")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const CYCLE: &str = r#"{"n":4,"edges":[[0,1,"1"],[1,2,"1"],[2,3,"1"],[3,0,"1"]]}"#;
const DUMBBELL: &str = r#"{"n":6,"edges":[[0,1,"2.5"],[1,2,"2.5"],[0,2,"2.5"],[3,4,"2.5"],[4,5,"2.5"],[3,5,"2.5"],[2,3,"0.5"]]}"#;

#[test]
fn solves_a_four_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "c4.json", CYCLE);
    let v = stdout_json(&qmincut(&["solve", "--input", &input, "--verify"]));
    assert_eq!(v["lambda"], "2");
    assert_eq!(v["scale"], "1");
    assert_eq!(v["model"], "matrix");
    let ledger = &v["ledger"];
    let sum: u64 = ledger["breakdown"].as_object().unwrap().values().map(|x| x.as_u64().unwrap()).sum();
    assert_eq!(ledger["quantum_charge"].as_u64(), Some(sum));
}

#[test]
fn dumbbell_bridge_in_array_model_with_repeats() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "db.json", DUMBBELL);
    let v = stdout_json(&qmincut(&[
        "solve", "--input", &input, "--model", "array", "--repeats", "9", "--seed", "7", "--verify",
    ]));
    assert_eq!(v["lambda"], "0.5");
    assert_eq!(v["scale"], "1/10");
    let shore: Vec<u64> = v["shore"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert!(shore == [0, 1, 2] || shore == [3, 4, 5], "{shore:?}");
}

#[test]
fn solve_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "db.json", DUMBBELL);
    let args = ["solve", "--input", &input, "--model", "array", "--repeats", "5", "--seed", "11"];
    let a = qmincut(&args);
    let b = qmincut(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let seq = qmincut(&[&args[..], &["--sequential"]].concat());
    assert_eq!(a.stdout, seq.stdout);
}

#[test]
fn rejects_disconnected_and_tiny_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let split = write(dir.path(), "split.json", r#"{"n":4,"edges":[[0,1,"1"],[2,3,"1"]]}"#);
    let out = qmincut(&["solve", "--input", &split]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("disconnected"));
    let one = write(dir.path(), "one.json", r#"{"n":1,"edges":[]}"#);
    assert!(!qmincut(&["solve", "--input", &one]).status.success());
    let bad = write(dir.path(), "bad.json", r#"{"n":2,"edges":[[0,1,"-1"]]}"#);
    assert!(!qmincut(&["solve", "--input", &bad]).status.success());
}

#[test]
fn bad_flags_fail() {
    assert!(!qmincut(&["solve", "--input", "x.json", "--eps", "0.1"]).status.success());
    assert!(!qmincut(&["gen", "--family", "nope", "--n", "8"]).status.success());
    assert!(!qmincut(&["gen", "--family", "random", "--n", "8"]).status.success());
}

#[test]
fn generated_instances_round_trip_through_solve() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("m.json");
    let graph = graph.to_str().unwrap();
    let summary = stdout_json(&qmincut(&[
        "gen", "--family", "matrix-lb", "--n", "16", "--tau", "2", "--seed", "3", "--hamming", "k-1", "--out", graph,
    ]));
    // k = tau * (n/2 - 1) = 14, one below it.
    assert_eq!(summary["lambda"], "13");
    let solved = stdout_json(&qmincut(&["solve", "--input", graph, "--verify"]));
    assert_eq!(solved["lambda"], "13");
}

#[test]
fn gen_is_reproducible() {
    let args = ["gen", "--family", "quadruple-lb", "--n", "20", "--tau", "5", "--seed", "9", "--ones", "3"];
    let a = qmincut(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, qmincut(&args).stdout);
    let g: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(g["n"], 20);
    let other = qmincut(&["gen", "--family", "quadruple-lb", "--n", "20", "--tau", "5", "--seed", "10", "--ones", "3"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn bench_prints_csv_and_slopes() {
    let out = qmincut(&["bench", "--n", "16,32", "--seeds", "1", "--model", "both"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("family,model,n,"));
    let rows: Vec<&&str> = lines.iter().filter(|l| l.starts_with("matrix-lb,")).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|l| l.ends_with(",true")));
    assert_eq!(lines.iter().filter(|l| l.starts_with("# slopes")).count(), 2);
}
