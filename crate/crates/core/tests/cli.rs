use std::path::PathBuf;
use std::process::Command;

use merge_forge::cli::{run, EXIT_DATA, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};

fn profile(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "profiles", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = run(std::iter::once("merge-forge").chain(args.iter().copied()));
    (out.code, out.output)
}

#[test]
fn merge_prints_ranking_and_result() {
    let (code, out) = cli(&["merge", "--profile", &profile("vacation.txt"), "--operator", "dH-sum"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("000  0   1   0   1*"), "{out}");
    assert!(out.contains("merged: {000, 001, 110}"), "{out}");
}

#[test]
fn formula_based_merges_of_the_holiday_example() {
    let p = profile("comma.txt");
    for (op, merged) in [("c1", "{100, 101}"), ("c3", "{}"), ("c4", "{101}"), ("c5", "{100, 101}")] {
        let (code, out) = cli(&["merge", "--profile", &p, "--operator", op]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains(&format!("merged: {merged}")), "{op}: {out}");
    }
    let (_, out) = cli(&["merge", "--profile", &p, "--operator", "c3"]);
    assert!(out.contains("formula: false"), "{out}");
}

#[test]
fn a_single_base_merges_to_itself() {
    let dir = std::env::temp_dir().join(format!("mf_single_{}", std::process::id()));
    std::fs::write(&dir, "vars a b\nbase K models { 01, 10 }\n").unwrap();
    for op in ["dH-sum", "dD-gmax", "hc1", "c5", "ocf-sigma"] {
        let (code, out) = cli(&["merge", "--profile", dir.to_str().unwrap(), "--operator", op]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("merged: {01, 10}"), "{op}: {out}");
    }
    let _ = std::fs::remove_file(dir);
}

#[test]
fn json_and_text_agree() {
    let p = profile("vacation.txt");
    let (_, text) = cli(&["index", "--profile", &p, "--operator", "dH-sum", "--agent", "K1"]);
    let (_, json) = cli(&["index", "--profile", &p, "--operator", "dH-sum", "--agent", "K1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(text.contains("p: 2/3"), "{text}");
    assert!(json.contains("\"2/3\""), "{json}");
    assert_eq!(v["merged"], "{000, 001, 110}");
}

#[test]
fn manipulate_reports_and_exits() {
    let p = profile("vacation.txt");
    let base = ["manipulate", "--profile", &p, "--agent", "K1", "--operator", "dH-sum", "--index", "ds"];
    let (code, out) = cli(&base);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("ds: 0 -> 1"), "{out}");
    let mut dil = base.to_vec();
    dil.extend(["--space", "dilation"]);
    assert_eq!(cli(&dil).0, EXIT_NEGATIVE);
    dil.extend(["--expect", "none"]);
    assert_eq!(cli(&dil).0, EXIT_OK);

    let (code, out) = cli(&["manipulate", "--profile", &profile("incomplete.txt"), "--agent", "K1", "--operator", "dH-gmax", "--index", "ds"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("report: {00}"), "{out}");
}

#[test]
fn explicit_candidates() {
    let p = profile("vacation.txt");
    let (code, out) = cli(&[
        "manipulate", "--profile", &p, "--agent", "K1", "--operator", "dH-sum", "--index", "ds",
        "--space", "explicit", "--candidate", "models { 000, 001 }",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("{000, 001}"), "{out}");
}

#[test]
fn audit_exit_codes() {
    assert_eq!(cli(&["audit", "T2.1", "--vars", "2", "--agents", "3"]).0, EXIT_OK);
    assert_eq!(cli(&["audit", "T4.dw", "--vars", "3", "--agents", "2"]).0, EXIT_OK);
    let (code, out) = cli(&["audit", "T9.dalal", "--vars", "2", "--agents", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verdict: counterexample-found"), "{out}");
    assert!(!out.contains("[MISMATCH]") && !out.contains("confirmed-SP over"), "{out}");
    assert_eq!(cli(&["audit", "T2.1", "--vars", "9"]).0, EXIT_USAGE);
    assert_eq!(cli(&["audit", "T0"]).0, EXIT_USAGE);
}

#[test]
fn reproduce_tables() {
    for id in ["1", "10", "17"] {
        let (code, out) = cli(&["reproduce", id]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains(&format!("PASS table {id}")), "{out}");
    }
    let (code, out) = cli(&["reproduce", "17"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("(16 rows, 0 differences)"), "{out}");
    assert_eq!(cli(&["reproduce", "3"]).0, EXIT_USAGE);
}

#[test]
fn usage_and_data_errors() {
    let p = profile("vacation.txt");
    assert_eq!(cli(&["merge", "--profile", &p, "--operator", "dX-sum"]).0, EXIT_USAGE);
    assert_eq!(cli(&["merge", "--profile", &p, "--operator", "ocf-max", "--mu", "l"]).0, EXIT_USAGE);
    assert_eq!(cli(&["merge", "--profile", &p, "--operator", "dH-sum", "--mu", "l & !l"]).0, EXIT_USAGE);
    assert_eq!(cli(&["index", "--profile", &p, "--operator", "dH-sum", "--agent", "K9"]).0, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).0, EXIT_USAGE);
    let bad = std::env::temp_dir().join(format!("mf_bad_{}", std::process::id()));
    std::fs::write(&bad, "vars a\nbase K1 formulas { a ; !a }\n").unwrap();
    assert_eq!(cli(&["merge", "--profile", bad.to_str().unwrap(), "--operator", "dH-sum"]).0, EXIT_DATA);
    let _ = std::fs::remove_file(bad);
}

#[test]
fn the_binary_uses_the_same_codes() {
    let exe = env!("CARGO_BIN_EXE_merge-forge");
    let p = profile("vacation.txt");
    let ok = Command::new(exe).args(["merge", "--profile", &p, "--operator", "dH-sum"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("merged: {000, 001, 110}"));
    let bad = Command::new(exe).args(["merge", "--profile", &p]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(!bad.stderr.is_empty());
    let neg = Command::new(exe)
        .args(["manipulate", "--profile", &p, "--agent", "K1", "--operator", "dH-sum", "--index", "ds", "--space", "dilation"])
        .output()
        .unwrap();
    assert_eq!(neg.status.code(), Some(EXIT_NEGATIVE));
}
