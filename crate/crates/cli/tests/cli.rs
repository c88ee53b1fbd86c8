use std::path::Path;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
}

fn torica(ws: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_torica"))
        .args(args)
        .env("TORICA_WORKSPACE", ws)
        .env_remove("TORICA_FIELD")
        .output()
        .unwrap();
    Run { code: out.status.code().unwrap(), stdout: String::from_utf8(out.stdout).unwrap() }
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", run.stdout))
}

fn passing_ids(report: &Value) -> Vec<String> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == Value::Bool(true))
        .map(|c| c["check_id"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn verify_writes_a_versioned_report() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().join("ws.json");
    let report = dir.path().join("report.json");
    let run = torica(&ws, &["paper", "verify", "--report", report.to_str().unwrap()]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["report_version"], 1);
    assert!(r["checks"].as_array().unwrap().len() >= 15);
    assert_eq!(r["failed"], 0);

    let small = torica(&ws, &["paper", "verify", "--field", "3", "--json"]);
    assert_eq!(small.code, 0);
    assert_eq!(passing_ids(&json(&small)), passing_ids(&r));
}

#[test]
fn fields_are_validated() {
    let ws = Path::new("/nonexistent/ws.json");
    for bad in ["2", "9", "0"] {
        let run = torica(ws, &["paper", "verify", "--field", bad, "--json"]);
        assert_eq!(run.code, 2, "field {bad}");
        assert_eq!(json(&run)["error"]["code"], "BAD_FIELD");
    }
}

#[test]
fn exit_codes_separate_domain_and_usage_failures() {
    let ws = Path::new("/nonexistent/ws.json");
    let line = torica(ws, &["cone", "rays", r#"{"dim":2,"generators":[[1,0],[-1,0]]}"#, "--json"]);
    assert_eq!(line.code, 1);
    assert_eq!(json(&line)["error"]["code"], "NOT_STRONGLY_CONVEX");
    let malformed = torica(ws, &["cone", "dual", "{", "--json"]);
    assert_eq!(malformed.code, 2);
    assert_eq!(json(&malformed)["error"]["code"], "BAD_JSON");
    assert_eq!(torica(ws, &["cone", "frobnicate"]).code, 2);
    let a1 = torica(ws, &["div", "half-canonical", "@A1", "--json"]);
    assert_eq!(a1.code, 1);
    assert_eq!(json(&a1)["error"]["count"], 2);
}

#[test]
fn documented_examples() {
    let ws = Path::new("/nonexistent/ws.json");
    let cg = torica(ws, &["div", "class-group", "@S", "--json"]);
    assert_eq!(json(&cg), serde_json::json!({"free": 1, "torsion": []}));
    assert_eq!(json(&torica(ws, &["div", "multiplicity", "--k", "2", "--s", "1", "--json"]))["multiplicity"], 4);
    let zero = torica(ws, &["ideal", "groebner", r#"{"vars":["x","y"],"gens":[]}"#, "--json"]);
    assert_eq!(json(&zero)["gens"], serde_json::json!([]));
    let q = torica(ws, &["ideal", "quotient-dim", "@S", "--cut", "C", "--cut", "Y", "--cut", "B - Z", "--json"]);
    assert_eq!(json(&q)["dimension"], 4);
}

#[test]
fn workspace_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().join("ws.json");
    assert_eq!(torica(&ws, &["ws", "put", "sigma", r#"{"dim":2,"generators":[[1,0],[1,2]]}"#]).code, 0);
    assert_eq!(torica(&ws, &["ws", "put", "s", "@S"]).code, 0);
    assert_eq!(torica(&ws, &["ws", "set-field", "5"]).code, 0);
    let before = std::fs::read(&ws).unwrap();

    // outputs of other commands can be stored and read back unchanged
    let cg = torica(&ws, &["div", "class-group", "ws:sigma", "--json"]);
    assert_eq!(json(&cg), serde_json::json!({"free": 0, "torsion": [2]}));
    let got = torica(&ws, &["ws", "get", "sigma", "--json"]);
    assert_eq!(json(&got), serde_json::json!({"dim": 2, "generators": [[1, 0], [1, 2]]}));
    assert_eq!(std::fs::read(&ws).unwrap(), before);

    assert_eq!(torica(&ws, &["ws", "put", "cg", &cg.stdout]).code, 0);
    assert_eq!(json(&torica(&ws, &["ws", "get", "cg", "--json"])), json(&cg));
}
