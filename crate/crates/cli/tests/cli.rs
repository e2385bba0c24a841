//! End-to-end tests of the `pmod` binary: exit codes, JSON shape, and
//! output determinism.

use std::process::{Command, Output};

fn pmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn check_commuting_code_exits_zero() {
    let out = pmod(&["check", "--catalog", "toric2d"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["commuting"], true);
}

#[test]
fn exactness_negative_exits_one() {
    let out = pmod(&["exactness", "--catalog", "ising2d"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["report"]["exact"], false);
    assert!(v["report"]["witness"].is_array());
}

#[test]
fn degeneracy_regression_value() {
    let out = pmod(&["degeneracy", "--catalog", "cubic", "--l", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["results"][0]["k"], 14);
}

#[test]
fn unknown_catalog_exits_two() {
    let out = pmod(&["check", "--catalog", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_json_exits_two() {
    let dir = std::env::temp_dir().join("pmod-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = pmod(&["check", "--code", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cell_cap_exits_three() {
    let out = pmod(&[
        "degeneracy",
        "--catalog",
        "toric2d",
        "--l",
        "8",
        "--max-cells",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn catalog_export_round_trips() {
    let out = pmod(&["catalog", "export", "chamon"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = std::env::temp_dir().join("pmod-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("chamon.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let check = pmod(&["check", "--code", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    let deg = pmod(&[
        "degeneracy",
        "--code",
        path.to_str().unwrap(),
        "--sizes",
        "2x2x2",
    ]);
    let v = stdout_json(&deg);
    assert_eq!(v["results"][0]["k"], 8);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["exactness", "--catalog", "toric3d"],
        vec!["fractal", "--catalog", "newman-moore"],
        vec!["torsion", "--catalog", "levin-wen"],
        vec!["classify1d", "--catalog", "ising1d"],
    ] {
        let a = pmod(&args);
        let b = pmod(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?} output not byte-identical");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn oracle_agrees_on_small_tori() {
    let out = pmod(&["oracle", "--catalog", "toric2d", "--l", "2", "--sizes", "2x3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["mismatches"], 0);
}

#[test]
fn process_trace_and_artifacts() {
    let dir = std::env::temp_dir().join("pmod-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("trace.csv");
    let pgm = dir.join("op.pgm");
    let out = pmod(&[
        "process",
        "--catalog",
        "newman-moore",
        "--f",
        "x+y+x*y",
        "--p",
        "x*y,0",
        "--r",
        "3",
        "--csv",
        csv.to_str().unwrap(),
        "--pgm",
        pgm.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["trace"]["operator_verified"], true);
    assert_eq!(v["trace"]["clusters"], 3);
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("step,energy\n0,0\n"));
    assert_eq!(csv_text.lines().count(), 29); // header + 27 steps + initial row
    let pgm_bytes = std::fs::read(&pgm).unwrap();
    assert!(pgm_bytes.starts_with(b"P5\n"));
}
