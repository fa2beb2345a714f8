use std::process::{Command, Output};

use serde_json::Value;
use zerosum::sweep::SweepReport;

fn zerosum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerosum"))
        .args(args)
        .output()
        .expect("run zerosum binary")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = zerosum(&full);
    let value = serde_json::from_slice(&out.stdout).expect("json on stdout");
    (exit_code(&out), value)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn verify_theorem_holds() {
    let (code, v) = json(&["verify", "theorem", "n=7: 1,1,1,2", "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["equality_holds"], true);
    assert_eq!(v["corollary_holds"], true);
    assert_eq!(v["sigma_bar"], 5);
}

#[test]
fn verify_theorem_reports_missing_target() {
    let (code, v) = json(&["verify", "theorem", "n=5: 1,3", "--k", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["hypotheses_met"], false);
    assert_eq!(v["missing_targets"], serde_json::json!([2]));
}

#[test]
fn verify_theorem_k_defaults_to_codimension() {
    let (code, v) = json(&["verify", "theorem", "n=7: 1,1,1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["k"], 3);
}

#[test]
fn verify_rejects_inconsistent_k() {
    let out = zerosum(&["verify", "theorem", "n=7: 1,1,1,2", "--k", "2"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("n - k"));
}

#[test]
fn verify_bounds_regimes() {
    let (code, v) = json(&["verify", "bounds", "n=7: 1,1,1,2", "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["regime"], "BEN");
    assert_eq!(v["required"], 2);

    let (code, v) = json(&["verify", "bounds", "n=9: 1,1,1,1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["regime"], "SC");
    assert_eq!(v["achieved"], 4);

    let out = zerosum(&["verify", "bounds", "n=7: 3,4,1,1"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("not zero-sum free"));
}

#[test]
fn normalize_example() {
    let (code, v) = json(&["normalize", "n=5: 3,3,3,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["g"], 2);
    assert_eq!(v["total"], 4);
    assert_eq!(v["normalized"], "n=5: 1,1,1,1");
}

#[test]
fn normalize_failure_exits_one() {
    let (code, v) = json(&["normalize", "n=5: 2,3"]);
    assert_eq!(code, 1);
    assert_eq!(v["achieves_bound"], false);
}

#[test]
fn decompose_witnesses() {
    let out = zerosum(&["decompose", "n=7: 1,1,1,2", "--t", "4"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("witness: 1,1,2\n"), "{text}");
    assert!(text.contains("bar_sum: 4\n"), "{text}");

    let (code, v) = json(&["decompose", "n=7: 1,1,1,2", "--t", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["witness"], "1,1,1,2");
}

#[test]
fn decompose_names_failed_hypothesis() {
    let out = zerosum(&["decompose", "n=5: 1,3", "--t", "2"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("n >= 2k+1"), "{}", stderr(&out));
}

#[test]
fn decompose_target_out_of_range_is_usage_error() {
    let out = zerosum(&["decompose", "n=7: 1,1,1,2", "--t", "6"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn sums_reports_both_sets() {
    let (code, v) = json(&["sums", "n=5: 2,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["subsums_mod"], serde_json::json!([2, 4]));
    assert_eq!(v["subsums_int"], serde_json::json!([2, 4]));
    assert_eq!(v["zero_sum_free"], true);
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        &["sums", "n=5: x"][..],
        &["sums", "5: 1,2"],
        &["normalize", "n=1: 0"],
        &["davenport", "klein"],
        &["dihedral", "check", "n=3: s0"],
        &["sweep", "nonsense"],
        &["sweep", "normalizer", "--jobs", "0"],
        &["frobnicate"],
    ] {
        let out = zerosum(args);
        assert_eq!(exit_code(&out), 2, "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn dihedral_commands() {
    let (code, v) = json(&["dihedral", "classify", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["found_count"], 8);
    assert_eq!(v["matches_family"], true);

    let (code, v) = json(&["dihedral", "check", "D n=3: r1,r1,s0"]);
    assert_eq!(code, 0);
    assert_eq!(v["product_one_free"], true);

    let (code, v) = json(&["dihedral", "check", "D n=4: r1,r1,s0,s1"]);
    assert_eq!(code, 1);
    assert_eq!(v["product_one_free"], false);
    assert!(!v["witness"].as_array().unwrap().is_empty());
}

#[test]
fn davenport_command() {
    let (code, v) = json(&["davenport", "dihedral:3"]);
    assert_eq!(code, 0);
    assert_eq!(v["d"], 3);
    assert_eq!(v["extremal_example"], "r1,r1,s0");

    let (code, v) = json(&["davenport", "sum:3x3"]);
    assert_eq!(code, 0);
    assert_eq!(v["d"], 4);

    // Every length-3 sequence searched is free, so d is not pinned down.
    let (code, v) = json(&["davenport", "cyclic:5", "--max-len", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["unbounded_within_budget"], 3);
}

#[test]
fn sweep_classification_counts() {
    let (code, v) = json(&["sweep", "classification", "--max-n", "6"]);
    assert_eq!(code, 0);
    for (n, count) in [("3", 7), ("4", 8), ("5", 20), ("6", 12)] {
        assert_eq!(v["counts"][n], count, "n = {n}");
    }
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn sweep_davenport_dihedral() {
    let (code, v) = json(&["sweep", "davenport", "--max-n", "7"]);
    assert_eq!(code, 0);
    for n in 3..=7 {
        assert_eq!(v["counts"][format!("dihedral:{n}")], n);
    }
}

#[test]
fn sweep_report_round_trips_and_timing_is_opt_in() {
    let out = zerosum(&[
        "--format",
        "json",
        "sweep",
        "interval-theorem",
        "--max-n",
        "12",
        "--jobs",
        "8",
        "--timing",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report: SweepReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.passed && report.counterexamples.is_empty());
    assert!(report.elapsed_ms.is_some());
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again.as_bytes(), &out.stdout[..]);
    assert!(stderr(&out).contains("elapsed_ms"));
}

#[test]
fn sweep_text_output() {
    let out = zerosum(&["sweep", "bounds", "--max-n", "9"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("suite: bounds\n"));
    assert!(text.ends_with("result: PASS\n"));
}
