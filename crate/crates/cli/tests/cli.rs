use std::process::{Command, Output};

use mtoh_core::trace_format::parse_trace;

fn mtoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtoh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn solve_emits_a_replayable_trace() {
    let out = mtoh(&["solve", "--alg", "62", "--n", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 83);
    let trace = parse_trace(&text).unwrap();
    assert!(trace.end().is_solved());
}

#[test]
fn solve_formats() {
    let csv = stdout(&mtoh(&[
        "solve", "--alg", "67d", "--n", "3", "--format", "csv",
    ]));
    assert_eq!(csv.lines().next(), Some("index,disk,from,to,S,I,D"));
    assert_eq!(csv.lines().count(), 12);
    let json = stdout(&mtoh(&[
        "solve", "--alg", "100", "--n", "2", "--format", "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["algorithm"], "100");
    assert_eq!(v["variant"], "colored-rbb");
    assert_eq!(v["length"], 4);
}

#[test]
fn count_uses_exact_arithmetic() {
    assert_eq!(stdout(&mtoh(&["count", "--alg", "100", "--n", "1"])), "1\n");
    assert_eq!(
        stdout(&mtoh(&["count", "--alg", "100", "--n", "64"])),
        "1716841910146256242328924544640\n"
    );
    let csv = stdout(&mtoh(&[
        "count", "--alg", "sf", "--n", "6", "--format", "csv",
    ]));
    assert!(csv.ends_with("6,183\ntotal,276\n"));
}

#[test]
fn usage_errors_exit_two() {
    let infeasible = mtoh(&["solve", "--alg", "sf", "--variant", "free", "--n", "3"]);
    assert_eq!(infeasible.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&infeasible.stderr).contains("cannot solve"));
    assert_eq!(
        mtoh(&["count", "--alg", "63", "--n", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(mtoh(&["tables", "--bogus"]).status.code(), Some(2));
    assert_eq!(mtoh(&["oracle", "--n", "9"]).status.code(), Some(2));
    assert_eq!(
        mtoh(&["solve", "--alg", "62", "--n", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn tables_match() {
    let out = mtoh(&["tables"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for id in ["T1", "T4", "T6", "TSF", "T9", "T10"] {
        assert!(text.contains(&format!("{id}: all cells match")), "{id}");
    }
    let t9 = stdout(&mtoh(&["tables", "--table", "t9", "--format", "csv"]));
    assert!(t9.contains("N=7,1,3,7,19,53,153,455,,691"));
}

#[test]
fn verify_reports_the_doomsday_digit_mismatch_only() {
    let out = mtoh(&["verify", "--max-n", "8"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let failures: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failures.len(), 1, "{text}");
    assert!(failures[0].starts_with("FAIL doomsday estimated remaining"));
    assert!(text.contains("PASS table T10"));
    assert!(text.contains("first mismatch: doomsday estimated remaining"));
}

#[test]
fn crossings_of_a_trace_file() {
    let dir = std::env::temp_dir().join(format!("mtoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t62.txt");
    let p = path.to_str().unwrap();
    assert!(mtoh(&["solve", "--alg", "62", "--n", "5", "--out", p])
        .status
        .success());
    let out = stdout(&mtoh(&["crossings", "--trace", p, "--format", "csv"]));
    assert_eq!(out, "S,I,D,total,moves\n2,3,3,8,83\n");
    std::fs::write(&path, "#mtoh n=2 variant=free\n1,1,S,D,0,0,-1\n").unwrap();
    assert_eq!(mtoh(&["crossings", "--trace", p]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_and_report() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&mtoh(&["oracle", "--n", "2", "--format", "json"]))).unwrap();
    assert_eq!(v["optimal_length"], "4");
    assert_eq!(v["optimal_solutions"], "2");
    let report = stdout(&mtoh(&["oracle", "--max-n", "3", "--format", "csv"]));
    assert_eq!(report.lines().count(), 4);
    assert!(report
        .lines()
        .nth(3)
        .unwrap()
        .starts_with("3,11,13,11,13,11,11,11,11,"));
}

#[test]
fn ratios_and_doomsday() {
    let csv = stdout(&mtoh(&["ratios", "--max-n", "7", "--format", "csv"]));
    assert!(csv.lines().nth(7).unwrap().contains("735/1093"));
    let text = stdout(&mtoh(&["doomsday"]));
    assert!(text.contains("9223372036854775808"));
    assert!(text.contains("approximation"));
    assert!(text.contains("exact"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["oracle", "--n", "5", "--workers", "3", "--format", "json"][..],
        &["tables", "--format", "csv"][..],
        &["crossings", "--format", "json"][..],
    ] {
        assert_eq!(mtoh(args).stdout, mtoh(args).stdout, "{args:?}");
    }
}
