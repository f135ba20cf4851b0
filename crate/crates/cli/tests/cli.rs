use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuspidal"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("CUSPIDAL_SEED")
        .env_remove("CUSPIDAL_JSON")
        .env_remove("CUSPIDAL_FILTER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn check_pv_cuspidal_entry() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["check-pv", "SL(3) x GL(2) : 2L1@L1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let verdict = &v["report"]["verdict"];
    assert_eq!(verdict["status"], "is_pv");
    assert_eq!(verdict["cuspidal"], true);
    assert_eq!(verdict["certificate"]["isotropy_dim"], 0);
    let path = v["certificate_path"].as_str().unwrap();
    let written: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(written, v["report"]);
}

#[test]
fn check_pv_non_pv_still_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["check-pv", "SL(3) x GL(1) : L1@1 + L1*@1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: ProbablyNotPV"));
}

#[test]
fn malformed_descriptor_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["check-pv", "SL(3 x GL(2) : L1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    let o = run(dir.path(), &["check-pv", "Spin(7) : spin"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lsa_from_descriptor_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["lsa", "GL(2) : 3L1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["report"]["lsa"]["dim"], 4);
    assert_eq!(v["report"]["right_identities"]["kernel"].as_array().unwrap().len(), 0);
    assert_eq!(v["report"]["frobenius"]["agree"], true);

    let o = run(dir.path(), &["lsa", "table1:A3 lambda=2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("right identity: (-1/3, 0, 0, -2/3) (unique)"));
}

#[test]
fn lsa_rejects_non_cuspidal() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["lsa", "SL(2) : L1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(dir.path(), &["lsa", "table1:A3 lambda=-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn castle_and_reduce() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["reduce", "SL(5) x GL(7) : L2*@L1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("SL(5) x GL(3) : L2@L1"));

    let o = run(dir.path(), &["castle", "SL(5) x GL(7) : L2*@L1", "--move", "0"]);
    assert_eq!(stdout(&o).trim(), "SL(5) x GL(3) : L2@L1");

    let o = run(dir.path(), &["castle", "SL(5) x GL(7) : L2*@L1", "--move", "3"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(
        dir.path(),
        &["castle", "SL(3) x GL(4) : 2L1@L1", "--move", "0", "--transport", "--json"],
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["report"]["verdicts_agree"], true);
    assert_eq!(v["report"]["isotropy_agree"], true);
}

#[test]
fn verify_catalog_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify-catalog", "--filter", "main-result", "--json", "--seed", "7"];
    let a = run(dir.path(), &args);
    let b = run(dir.path(), &[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["passed"], v["total"]);
    assert!(dir.path().join("verify-catalog.json").exists());
}

#[test]
fn bad_filter_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["verify-catalog", "--filter", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_cuspidal"))
        .args(["verify-catalog", "--out"])
        .arg(dir.path())
        .env("CUSPIDAL_FILTER", "gl2")
        .env("CUSPIDAL_JSON", "true")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["filter"], "gl2");
    assert_eq!(v["total"], 7);
}
