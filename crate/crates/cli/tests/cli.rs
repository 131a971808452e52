//! End-to-end tests of the binary: output formats, exit codes, determinism.

use std::path::Path;
use std::process::{Command, Output};

fn countlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_countlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().to_string()
}

#[test]
fn count_prints_profile_with_both_engines() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "f.cnf", "p cnf 2 1\n1 2 0\n");
    let dpll = countlab(&["count", &path]);
    assert!(dpll.status.success());
    assert_eq!(stdout(&dpll), "accepted=3 paths=2^2\n");
    let brute = countlab(&["count", &path, "--engine", "bruteforce"]);
    assert_eq!(stdout(&brute), stdout(&dpll));
}

#[test]
fn count_reports_unsatisfiable_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "unsat.cnf", "p cnf 2 2\n1 0\n-1 0\n");
    let out = countlab(&["count", &path]);
    assert_eq!(stdout(&out), "accepted=0 paths=2^2\n");
}

#[test]
fn parse_errors_exit_three_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.cnf", "p cnf 1 1\n2 0\n");
    let out = countlab(&["count", &path]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("line 2"));

    let missing = countlab(&["count", "/nonexistent/file.cnf"]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn classify_spec_cases() {
    let dir = tempfile::tempdir().unwrap();
    // 7 models over 4 variables: value < 7 block.
    let seven = write(dir.path(), "seven.cnf", "p cnf 4 2\n-1 0\n1 -2 -3 -4 0\n");
    let out = countlab(&["classify", &seven, "--class", "MNS"]);
    assert_eq!(stdout(&out), "Accept\n");
    // 7 of 16 paths is not a strict majority.
    let out = countlab(&["classify", &seven, "--class", "PP"]);
    assert_eq!(stdout(&out), "Reject\n");

    let five = write(dir.path(), "five.cnf", "p cnf 3 2\n-1 -2 0\n-1 2 -3 0\n");
    let out = countlab(&["classify", &five, "--class", "F=P", "--target", "5"]);
    assert_eq!(stdout(&out), "Accept\n");
    let out = countlab(&["classify", &five, "--class", "MNP"]);
    assert_eq!(stdout(&out), "PromiseViolated\n");
}

#[test]
fn classify_unknown_class_lists_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "f.cnf", "p cnf 1 1\n1 0\n");
    let out = countlab(&["classify", &path, "--class", "XYZ"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("MNS") && err.contains("F=P") && err.contains("UPk"));
}

#[test]
fn classify_missing_aux_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "f.cnf", "p cnf 1 1\n1 0\n");
    let out = countlab(&["classify", &path, "--class", "FewP"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("q"));
}

#[test]
fn transform_then_count_matches_the_audit() {
    let dir = tempfile::tempdir().unwrap();
    let one = write(dir.path(), "one.cnf", "p cnf 3 3\n1 0\n2 0\n3 0\n");
    let out_path = dir.path().join("out.cnf");
    let out = countlab(&[
        "transform",
        &one,
        "us_to_mns",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("count_expression=a * (2^3 - 1)"));

    let counted = countlab(&["count", out_path.to_str().unwrap()]);
    assert_eq!(stdout(&counted), "accepted=7 paths=2^6\n");

    let emitted = std::fs::read_to_string(&out_path).unwrap();
    assert!(emitted.contains("c countlab: construction=us_to_mns"));
}

#[test]
fn transform_surfaces_precondition_violations() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "f.cnf", "p cnf 3 0\n");
    let out_path = dir.path().join("out.cnf");
    let out = countlab(&[
        "transform",
        &path,
        "add_const",
        "--params",
        "c=9,width=3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("exceeds the 2^3 block capacity"));
}

fn parse_profile(text: &str) -> (u64, u32) {
    // "accepted=N paths=2^P"
    let mut parts = text.split_whitespace();
    let accepted = parts
        .next()
        .unwrap()
        .strip_prefix("accepted=")
        .unwrap()
        .parse()
        .unwrap();
    let exponent = parts
        .next()
        .unwrap()
        .strip_prefix("paths=2^")
        .unwrap()
        .parse()
        .unwrap();
    (accepted, exponent)
}

#[test]
fn transform_complement_chains_follow_their_audits() {
    // Each complement counts 2^numVars - count over its own input's full
    // variable set, gate variables included.
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "f.cnf", "p cnf 3 2\n1 2 0\n-3 0\n");
    let once = dir.path().join("once.cnf");
    let twice = dir.path().join("twice.cnf");
    countlab(&[
        "transform",
        &path,
        "complement",
        "--out",
        once.to_str().unwrap(),
    ]);
    countlab(&[
        "transform",
        once.to_str().unwrap(),
        "complement",
        "--out",
        twice.to_str().unwrap(),
    ]);
    let (first_count, first_exponent) =
        parse_profile(&stdout(&countlab(&["count", once.to_str().unwrap()])));
    let (second_count, _) = parse_profile(&stdout(&countlab(&["count", twice.to_str().unwrap()])));
    assert_eq!(first_count, 8 - 3);
    assert_eq!(second_count, (1u64 << first_exponent) - first_count);
}

#[test]
fn verify_passes_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = countlab(&[
        "verify",
        "T8",
        "--n-max",
        "4",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("result PASS"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["suite"], "T8");
    assert_eq!(json["passed"], true);
    assert_eq!(json["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_failures_exit_two() {
    // The half-count construction's degenerate width is reported as a
    // verification failure.
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = countlab(&[
        "verify",
        "T7",
        "--n-max",
        "1",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("result FAIL"));
    assert!(stdout(&out).contains("replay=[countlab verify T7"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["passed"], false);
    assert!(!json["failures"].as_array().unwrap().is_empty());
}

#[test]
fn verify_unknown_suite_exits_one() {
    let out = countlab(&["verify", "T99"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("available suites"));
}

#[test]
fn verify_stdout_is_byte_identical_across_runs() {
    let a = countlab(&["verify", "T3", "--n-max", "6"]);
    let b = countlab(&["verify", "T3", "--n-max", "6"]);
    assert_eq!(a.stdout, b.stdout);
    let c = countlab(&["verify", "T7", "--n-max", "1"]);
    let d = countlab(&["verify", "T7", "--n-max", "1"]);
    assert_eq!(c.stdout, d.stdout, "failure reports are deterministic too");
}

#[test]
fn catalog_lists_all_seventeen_specs() {
    let out = countlab(&["catalog"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 17);
    assert!(text.contains("MNS"));
    assert!(text.contains("syntactic"));
    assert!(text.contains("semantic"));
}

#[test]
fn usage_errors_exit_one() {
    let out = countlab(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    let out = countlab(&["count"]);
    assert_eq!(out.status.code(), Some(1));
}
