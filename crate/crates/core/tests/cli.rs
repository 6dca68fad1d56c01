use std::process::{Command, Output};

use fock_leray::json::parse_field;
use fock_leray::linalg::Rational;
use fock_leray::words::Word;

const BIN: &str = env!("CARGO_BIN_EXE_fock-leray");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("FOCK_LERAY_THREADS").output().unwrap()
}

fn write_input(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn dims_matches_golden() {
    let out = run(&["dims", "--n", "2", "--max-degree", "3", "--format", "csv"]);
    assert!(out.status.success());
    let golden = include_bytes!("fixtures/dims_n2_k3.csv");
    assert_eq!(out.stdout, golden.to_vec());
}

#[test]
fn dims_json() {
    let out = run(&["dims", "--n", "3", "--max-degree", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[2]["dim_divfree"], 16);
    assert_eq!(v[2]["necklaces"], 11);
}

#[test]
fn leray_of_single_term() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(&dir, "field.json", r#"{"n": 2, "terms": [{"word": [1], "dir": 2, "num": "1", "den": "1"}]}"#);
    let out = run(&["project", "--n", "2", "--in", &input, "--kind", "leray"]);
    assert!(out.status.success());
    let field = parse_field(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let half = Rational::new(1.into(), 2.into());
    assert_eq!(field.len(), 2);
    assert_eq!(field.coeff(&Word::from_letters(vec![1]), 2), half);
    assert_eq!(field.coeff(&Word::from_letters(vec![2]), 1), -half);
}

#[test]
fn projection_round_trip_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(
        &dir,
        "field.json",
        r#"{"n": 3, "terms": [
            {"word": [1, 2], "dir": 3, "num": "5", "den": "7"},
            {"word": [3], "dir": 1, "num": "-2", "den": "3"},
            {"word": [], "dir": 2, "num": "1", "den": "1"}]}"#,
    );
    for kind in ["cyclic", "leray"] {
        let first = dir.path().join(format!("{kind}-1.json"));
        let second = dir.path().join(format!("{kind}-2.json"));
        let a = run(&["project", "--n", "3", "--in", &input, "--kind", kind, "--out", first.to_str().unwrap()]);
        assert!(a.status.success());
        assert!(a.stdout.is_empty());
        let b = run(&["project", "--n", "3", "--in", first.to_str().unwrap(), "--kind", kind, "--out", second.to_str().unwrap()]);
        assert!(b.status.success());
        assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
    }
}

#[test]
fn malformed_input_names_the_term() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(
        &dir,
        "bad.json",
        r#"{"n": 2, "terms": [{"word": [1], "dir": 1, "num": "1", "den": "1"},
                              {"word": [3], "dir": 1, "num": "1", "den": "1"}]}"#,
    );
    let out = run(&["project", "--n", "2", "--in", &input, "--kind", "cyclic"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("term 1"));

    let zero_den = write_input(&dir, "zero.json", r#"{"n": 2, "terms": [{"word": [1], "dir": 1, "num": "1", "den": "0"}]}"#);
    let out = run(&["project", "--n", "2", "--in", &zero_den, "--kind", "cyclic"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("term 0"));

    let not_json = write_input(&dir, "junk.json", "{ nope");
    assert_eq!(run(&["project", "--n", "2", "--in", &not_json, "--kind", "cyclic"]).status.code(), Some(2));
}

#[test]
fn alphabet_mismatch_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(&dir, "field.json", r#"{"n": 2, "terms": [{"word": [1], "dir": 2, "num": "1", "den": "1"}]}"#);
    let out = run(&["project", "--n", "3", "--in", &input, "--kind", "leray"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--check", "projection-formula", "--n", "2", "--max-degree", "3", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let reports: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(reports.as_array().unwrap().iter().all(|r| r["seed"] == 11 && r["passed"] == true));
}

#[test]
fn verify_all_passes() {
    let out = run(&["verify", "--all", "--n", "2", "--max-degree", "4", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn thread_variable() {
    let ok = Command::new(BIN)
        .args(["verify", "--check", "stein", "--n", "2"])
        .env("FOCK_LERAY_THREADS", "1")
        .output()
        .unwrap();
    assert!(ok.status.success());
    let bad = Command::new(BIN)
        .args(["verify", "--check", "stein", "--n", "2"])
        .env("FOCK_LERAY_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn zeta_rejects_exact_mode() {
    let out = run(&["basis", "--kind", "zeta", "--n", "2", "--degree", "3", "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["basis", "--kind", "divfree", "--n", "2", "--degree", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 10);
}
