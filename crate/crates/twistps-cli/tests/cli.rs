//! End-to-end checks of the command-line surface: flags, formats, exit
//! codes and cache behavior.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twistps"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn dims_json_contains_the_expected_entry() {
    let out = run(&[
        "dims", "--side", "presentation", "--k", "1", "--i", "0", "--max-charge", "3",
        "--max-4w", "12", "--format", "json",
    ]);
    assert!(out.status.success());
    let table: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let entries = table["entries"].as_array().unwrap();
    assert!(entries.iter().any(|e| e == &serde_json::json!([1, 1, 1])));
    assert!(entries.iter().any(|e| e == &serde_json::json!([0, 0, 1])));
    assert_eq!(table["convention"], "m-neg");
}

#[test]
fn dims_module_side_kills_the_first_mode_at_full_twist() {
    let out = run(&[
        "dims", "--side", "module", "--k", "2", "--i", "2", "--max-charge", "3", "--max-4w", "6",
    ]);
    assert!(out.status.success());
    let table: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let entries = table["entries"].as_array().unwrap();
    assert!(entries.iter().any(|e| e == &serde_json::json!([1, 1, 0])));
}

#[test]
fn dims_csv_has_the_documented_header() {
    let out = run(&[
        "dims", "--k", "1", "--max-charge", "2", "--max-4w", "4", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("charge,weight_x4,dim\n"));
    assert!(text.contains("\n1,1,1\n"));
}

#[test]
fn verify_exit_codes_reflect_outcomes() {
    let ok = run(&["verify", "recursions", "--k", "1", "--max-charge", "4", "--max-4w", "8"]);
    assert_eq!(ok.status.code(), Some(0));
    // the seed-negative level-2 presentation mismatch is a real failure
    let bad = run(&[
        "verify", "presentation", "--k", "2", "--i", "0", "--max-charge", "4", "--max-4w", "10",
        "--convention", "m-neg",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    let good = run(&[
        "verify", "presentation", "--k", "2", "--i", "0", "--max-charge", "4", "--max-4w", "10",
        "--convention", "arg-neg",
    ]);
    assert_eq!(good.status.code(), Some(0));
}

#[test]
fn invalid_configuration_exits_2() {
    let out = run(&["dims", "--k", "2", "--i", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["dims", "--k", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn guard_violation_exits_3() {
    // order beyond the box's weight cap
    let out = run(&[
        "conjecture", "nahm", "--k", "1", "--N", "30", "--max-charge", "5", "--max-4w", "12",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn conjecture_always_exits_0_with_status_field() {
    let out = run(&[
        "conjecture", "sequences", "--k", "2", "--i", "1", "--max-charge", "4", "--max-4w", "8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let status = report["status"].as_str().unwrap();
    assert!(status == "conjecture-pass" || status == "conjecture-fail");
}

#[test]
fn cache_corruption_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let warm = run(&[
        "dims", "--k", "1", "--max-charge", "2", "--max-4w", "4", "--cache-dir", cache,
    ]);
    assert!(warm.status.success());
    let path = dir.path().join("k1-i0-m-neg-sum-family").join("c1-w1.json");
    std::fs::write(&path, "not json").unwrap();
    let out = run(&[
        "dims", "--k", "1", "--max-charge", "2", "--max-4w", "4", "--cache-dir", cache,
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn cold_and_warm_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = [
        "dims", "--side", "presentation", "--k", "2", "--i", "1", "--max-charge", "4",
        "--max-4w", "10", "--cache-dir", cache,
    ];
    let cold = run(&args);
    assert!(cold.status.success());
    let warm = run(&args);
    assert_eq!(cold.stdout, warm.stdout);
    // the cache directory override by environment variable
    let env_run = bin()
        .args(["dims", "--side", "presentation", "--k", "2", "--i", "1", "--max-charge", "4", "--max-4w", "10"])
        .env("TWISTPS_CACHE_DIR", cache)
        .output()
        .unwrap();
    assert_eq!(cold.stdout, env_run.stdout);
}

#[test]
fn jobs_flag_does_not_change_results() {
    let one = run(&["dims", "--k", "2", "--max-charge", "4", "--max-4w", "10", "--jobs", "1"]);
    let many = run(&["dims", "--k", "2", "--max-charge", "4", "--max-4w", "10", "--jobs", "4"]);
    assert_eq!(one.stdout, many.stdout);
}
