use std::path::Path;
use std::process::{Command, Output};

use cyclocode::verify::{Status, TheoremId, VerificationRecord};

fn cyclocode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclocode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn cyclo_prints_coefficients_and_profile() {
    let out = cyclocode(&["cyclo", "--n", "6", "--field", "5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!([1, 4, 1]));
    assert_eq!(v["profile"]["phi"], 2);
    assert_eq!(v["profile"]["lpf"], 2);

    let out = cyclocode(&["cyclo", "--n", "3", "--field", "2^2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        v["coefficients"],
        serde_json::json!([[1, 0], [1, 0], [1, 0]])
    );
}

#[test]
fn code_verbs() {
    let out = cyclocode(&[
        "code", "build", "--n", "15", "--field", "2", "--kind", "cn1",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["n"].as_u64(), v["k"].as_u64()), (Some(15), Some(6)));

    let out = cyclocode(&["code", "dual", "--n", "3", "--field", "2", "--kind", "rep"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["generator"], serde_json::json!([1, 1]));

    let out = cyclocode(&["code", "mindist", "--n", "15", "--field", "2", "--dual"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["d"], 4);

    let out = cyclocode(&[
        "code", "weights", "--n", "3", "--field", "2", "--kind", "rep",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["weights"], serde_json::json!([1, 0, 0, 1]));

    let out = cyclocode(&["code", "zeros", "--n", "6", "--field", "5"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["defining_set"]["zeros"], serde_json::json!([1, 5]));

    let out = cyclocode(&["code", "build", "--n", "7", "--field", "2", "--kind", "cn1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_tensor_emits_record() {
    let out = cyclocode(&["verify", "tensor", "--n1", "3", "--n2", "5", "--field", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let rec: VerificationRecord = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec.theorem_id, TheoremId::TensorEquiv);
    assert_eq!(rec.status, Status::Pass);

    let out = cyclocode(&["verify", "tensor", "--n1", "4", "--n2", "6", "--field", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_writes_deterministic_reports() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("out.csv");
    let body = format!(
        r#"{{"fields": [2, "3", "2^2"], "n_range": [2, 16], "budget": 65536,
            "output": {{"path": {:?}, "format": "csv"}}}}"#,
        csv_path
    );
    let cfg = write_config(dir.path(), "sweep.json", &body);
    let out = cyclocode(&["verify", "sweep", "--config", &cfg]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let first = std::fs::read(&csv_path).unwrap();
    let out = cyclocode(&["verify", "sweep", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(first, std::fs::read(&csv_path).unwrap());

    let text = String::from_utf8(first).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "theorem_id,q,n,n1,n2,claimed_n,claimed_k,claimed_d,measured_n,measured_k,measured_d,status,elapsed_s"
    );
    assert_eq!(lines.count(), 3 * 15 * 7);
    assert!(!text.contains(",fail,"));
}

#[test]
fn sweep_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("out.json");
    let body = format!(
        r#"{{"fields": [5], "n_range": [2, 12], "theorems": ["CN-DIST", "CN1-DUAL-SUM"],
            "output": {{"path": {:?}, "format": "json"}}}}"#,
        json_path
    );
    let cfg = write_config(dir.path(), "sweep.json", &body);
    assert_eq!(
        cyclocode(&["verify", "sweep", "--config", &cfg])
            .status
            .code(),
        Some(0)
    );
    let recs: Vec<VerificationRecord> =
        serde_json::from_slice(&std::fs::read(&json_path).unwrap()).unwrap();
    assert_eq!(recs.len(), 22);
    assert!(recs.iter().all(|r| r.status != Status::Fail));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for body in [
        r#"{"n_range": [1, 5]}"#,
        r#"{"budget": 0}"#,
        "not json",
        r#"{"fields": [6]}"#,
    ] {
        let cfg = write_config(dir.path(), "bad.json", body);
        let out = cyclocode(&["verify", "sweep", "--config", &cfg]);
        assert_eq!(out.status.code(), Some(2), "{body}");
    }
    let out = cyclocode(&["verify", "sweep", "--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conjecture_run_prints_csv() {
    let out = cyclocode(&["conjecture", "run", "--field", "2", "--n-max", "21"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    // odd composites up to 21
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("CONJECTURE-CN1-DUAL,2,9,"));
    assert!(rows[0].ends_with(",observed,"));
    assert!(rows[1].starts_with("CONJECTURE-CN1-DUAL,2,15,"));
    assert!(rows[1].ends_with(",pass,"));
}
