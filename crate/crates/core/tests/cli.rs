//! End-to-end runs of the `czl` binary: documented examples, exit codes, schema
//! validity and thread invariance.

use serde_json::Value;
use std::process::{Command, Output};

fn czl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_czl")).args(args).output().expect("czl runs")
}

fn schema() -> jsonschema::Validator {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/report.schema.json");
    let text = std::fs::read_to_string(path).expect("schema file ships with the repo");
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).expect("schema compiles")
}

fn stdout_json(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert!(schema().is_valid(&v), "document violates schema: {v}");
    v
}

fn stderr_json(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert!(schema().is_valid(&v), "error violates schema: {v}");
    v
}

fn without_runtime(mut v: Value) -> Value {
    for r in v["reports"].as_array_mut().unwrap() {
        r["runtime_ms"] = Value::from(0);
    }
    v
}

#[test]
fn lemma_diag_example() {
    let out = czl(&["check", "lemma-diag", "--r", "3", "--trials", "100", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["pass"], true);
    for r in doc["reports"].as_array().unwrap() {
        assert!(r["metadata"]["offdiag_max"].as_f64().unwrap() < 1e-10 * 8.0);
    }
}

#[test]
fn rank_one_completed_example() {
    let out = czl(&["check", "fe-completed", "--cone", "orthant_1", "--s", "0.5", "--f", "gaussian"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let rep = &doc["reports"][0];
    for side in ["lhs", "rhs"] {
        assert!((rep[side][0][0].as_f64().unwrap() - 0.7071068).abs() < 1e-7);
        assert!(rep[side][0][1].as_f64().unwrap().abs() < 1e-15);
    }
}

#[test]
fn vinberg_raw_auto_strip() {
    let out = czl(&["check", "fe-raw", "--cone", "vinberg", "--s", "auto-strip"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for r in reports {
        assert_eq!(r["tolerance"].as_f64(), Some(5e-3));
        assert_eq!(r["pass"], true);
    }
}

#[test]
fn describe_examples() {
    let q = stdout_json(&czl(&["describe", "rank3_quat"]));
    assert_eq!(q["m"], 0);
    assert_eq!(q["sigma"], serde_json::json!([[1, 0, 0], [1, 1, 0], [1, 0, 1]]));
    assert_eq!(q["sigma_star"], serde_json::json!([[1, 1, 1], [0, 1, 0], [0, 0, 1]]));
    assert_eq!(q["reversal"]["verdict"], "not equal");
    assert_eq!(stdout_json(&czl(&["describe", "vinberg"]))["m"], "fails");
    let o = stdout_json(&czl(&["describe", "orthant_3"]));
    assert_eq!(o["m"], 0);
    assert_eq!(o["sigma"], serde_json::json!([[1, 0, 0], [0, 1, 0], [0, 0, 1]]));
    let list = stdout_json(&czl(&["list-cones"]));
    assert!(list["cones"].as_array().unwrap().iter().any(|c| c["name"] == "lorentz_4"));
}

#[test]
fn graph_command() {
    let p3 = stdout_json(&czl(&["graph", "--graph", r#"{"vertices": 3, "edges": [[0, 1], [1, 2]]}"#]));
    assert_eq!(p3["m"], 0);
    assert_eq!(p3["p"], serde_json::json!([0, 4, 4]));
    let out = czl(&["graph", "--graph", r#"{"vertices": 4, "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "not_chordal");
    let check = czl(&["check", "graph", "--graph", r#"{"vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]}"#]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(stdout_json(&check)["reports"][0]["metadata"]["m"], 1);
}

#[test]
fn exit_codes() {
    let fail = czl(&["check", "lemma-diag", "--r", "2", "--tol", "0"]);
    assert_eq!(fail.status.code(), Some(1));
    assert_eq!(stdout_json(&fail)["pass"], false);
    let guard = czl(&["check", "fe-raw", "--cone", "orthant_1", "--s", "1.5"]);
    assert_eq!(guard.status.code(), Some(2));
    let err = stderr_json(&guard);
    assert_eq!(err["error"]["kind"], "guard");
    assert!(err["error"]["message"].as_str().unwrap().contains("Re w_1 = 1.5"));
    assert_eq!(czl(&["describe", "no_such_cone"]).status.code(), Some(2));
    assert_eq!(czl(&["check", "fe-completed", "--cone", "vinberg", "--s", "1,1,1"]).status.code(), Some(2));
    assert_eq!(czl(&["check", "fe-raw", "--cone", "orthant_1", "--s", "zz"]).status.code(), Some(2));
    assert_eq!(czl(&["--no-such-flag"]).status.code(), Some(2));
    let io = czl(&["suite", "desk", "--out", "/nonexistent-dir/report.json"]);
    assert_eq!(io.status.code(), Some(2));
    assert_eq!(stderr_json(&io)["error"]["kind"], "io");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("czl-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("det.json");
    let out = czl(&["check", "det-conjecture", "--cone", "lorentz_4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(schema().is_valid(&doc));
    assert_eq!(doc["reports"][0]["check_id"], "det-conjecture");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn threads_and_reruns_do_not_change_numbers() {
    let args = ["check", "fe-completed", "--cone", "lorentz_4", "--f", "hermite:1", "--seed", "5"];
    let one = without_runtime(stdout_json(&czl(&[&args[..], &["--threads", "1"]].concat())));
    let three = without_runtime(stdout_json(&czl(&[&args[..], &["--threads", "3"]].concat())));
    let again = without_runtime(stdout_json(&czl(&[&args[..], &["--threads", "1"]].concat())));
    assert_eq!(one, three);
    assert_eq!(one, again);
    let other_seed = without_runtime(stdout_json(&czl(&["check", "fe-completed", "--cone", "lorentz_4", "--f", "hermite:1", "--seed", "6"])));
    assert_ne!(one["reports"][1]["inputs"], other_seed["reports"][1]["inputs"]);
}

#[test]
fn calibrate_reports_constants() {
    let out = czl(&["calibrate", "--cone", "orthant_2", "--trials", "2", "--nodes", "96"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let c = doc["reports"][0]["metadata"]["c_primal"].as_f64().unwrap();
    assert!((c - 1.0).abs() < 1e-8);
}
