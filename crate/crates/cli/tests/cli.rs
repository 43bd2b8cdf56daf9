use std::process::{Command, Output};

use bfree_core::analysis::AnalysisReport;

fn bfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bfree")).args(args).env_remove("BFREE_LEVEL_CAP").output().expect("run bfree")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn eta_range_has_41_bits() {
    let o = bfree(&["eta", "--range", "-20..20", "b1"]);
    assert_eq!(o.status.code(), Some(0));
    let bits = stdout(&o);
    assert_eq!(bits.trim().len(), 41);
    // 0 is divisible by every generator
    assert_eq!(bits.as_bytes()[20], b'0');
}

#[test]
fn eta_csv_and_toeplitz() {
    let o = bfree(&["--format", "csv", "eta", "--range", "0..3", "gh"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("position,bit\n0,"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn window_shift_reports_z() {
    let o = bfree(&["--format", "json", "automorphism", "verify-window-shift", "--ell", "1", "--n", "7", "--t", "3", "b1n"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["z"], "1680");
    assert_eq!(v["confirmed"], true);
}

#[test]
fn wrong_order_is_a_violation() {
    let o = bfree(&["automorphism", "verify-order", "--order", "2", "b1n"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("REFUTED"));
}

#[test]
fn other_map_checks() {
    assert_eq!(bfree(&["automorphism", "verify-commutation", "--k", "-5..5", "--half", "100", "b1n"]).status.code(), Some(0));
    assert_eq!(bfree(&["automorphism", "verify-rotation", "--range", "-50..50", "b1n"]).status.code(), Some(0));
    // t must satisfy 2^t > n
    assert_eq!(bfree(&["automorphism", "verify-window-shift", "--n", "9", "--t", "3", "b1n"]).status.code(), Some(4));
    // F_ℓ exists only for ℓ < N
    assert_eq!(bfree(&["automorphism", "verify-order", "--ell", "2", "b1n"]).status.code(), Some(4));
}

#[test]
fn analyze_json_is_deterministic_and_round_trips() {
    let args = ["--format", "json", "analyze", "b1", "--n-max", "2", "--oracle"];
    let (a, b) = (bfree(&args), bfree(&args));
    assert_eq!(a.stdout, b.stdout);
    let report: AnalysisReport = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report.levels[0].holes_residues, Some(vec![2, 4]));
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", stdout(&a));
}

#[test]
fn analyze_exit_codes() {
    // condition (*) fails for b1; the other conditions hold up to budget
    assert_eq!(bfree(&["analyze", "b1"]).status.code(), Some(2));
    assert_eq!(bfree(&["analyze", "b1", "--conditions", "sh,seh,dseh"]).status.code(), Some(0));
    // b2: (Sh) fails at k = 1; the residue-level checks exceed the cap
    assert_eq!(bfree(&["analyze", "b2", "--conditions", "sh"]).status.code(), Some(2));
    assert_eq!(bfree(&["analyze", "b2", "--conditions", "seh"]).status.code(), Some(3));
}

#[test]
fn input_errors_exit_4() {
    assert_eq!(bfree(&["analyze", "no-such-spec"]).status.code(), Some(4));
    assert_eq!(bfree(&["analyze", "b1", "--n-max", "0"]).status.code(), Some(4));
    assert_eq!(bfree(&["analyze", "b1", "--n-max", "13"]).status.code(), Some(4));
    assert_eq!(bfree(&["eta", "--range", "5..1", "b1"]).status.code(), Some(4));
    assert_eq!(bfree(&["frobnicate"]).status.code(), Some(4));
    let capped = Command::new(env!("CARGO_BIN_EXE_bfree")).args(["analyze", "b1"]).env("BFREE_LEVEL_CAP", "2").output().unwrap();
    assert_eq!(capped.status.code(), Some(4));
    let dir = std::env::temp_dir().join(format!("bfree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "family = \"b1\"\n[params]\nc = [3, 5]\nbogus = 1\n").unwrap();
    assert_eq!(bfree(&["analyze", bad.to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn spec_file_from_disk() {
    let dir = std::env::temp_dir().join(format!("bfree-cli-disk-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("skeleton.toml");
    std::fs::write(&path, "family = \"skeleton\"\n[[levels]]\nperiod = 2\nword = \"0?\"\n[[levels]]\nperiod = 4\nword = \"0?01\"\n").unwrap();
    let o = bfree(&["--format", "json", "analyze", path.to_str().unwrap(), "--n-max", "1"]);
    assert!(o.status.success() || o.status.code() == Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    let report: AnalysisReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report.levels[0].p_n, "2");
}

#[test]
fn analyze_csv_has_header() {
    let o = bfree(&["--format", "csv", "analyze", "b1n", "--n-max", "2"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,p_n,holes,essential_holes,tau,tau_tilde,methods_agree,stabilized"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn complexity_trend_csv() {
    let o = bfree(&["--format", "csv", "complexity", "--n", "1..6", "--L", "2000", "b2-complexity"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("n,rho,log_rho_over_log_n\n1,2,\n"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn examples_run_named() {
    for name in ["b1n", "not-all-holes", "two-filtrations"] {
        let o = bfree(&["examples", "run", name]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("PASS"));
    }
    assert_eq!(bfree(&["examples", "run", "nonexistent"]).status.code(), Some(4));
}

#[test]
fn specs_show_round_trips() {
    let o = bfree(&["specs", "show", "b2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(bfree_core::specfile::SpecFile::parse(&stdout(&o)).is_ok());
}

#[test]
fn analyze_json_matches_shipped_schema() {
    let schema: serde_json::Value = serde_json::from_str(include_str!("../../../docs/analysis-report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for spec in ["b1", "b2", "gh", "two-filtrations-primed", "explicit"] {
        let o = bfree(&["--format", "json", "analyze", spec, "--n-max", "2", "--oracle"]);
        let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        let errors: Vec<String> = validator.iter_errors(&report).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{spec}: {errors:?}");
    }
}
