//! End-to-end checks of the command-line interface: dispatch, exit codes,
//! file formats, reproducibility.

use std::process::{Command, Output};

fn mmba(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mmba"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn closed_form_dispatch() {
    let out = mmba(&["closed-form", "coxeter", "--group", "A2", "--m", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("-1/12"), "{text}");

    let out = mmba(&[
        "closed-form", "df", "--n", "0", "--m", "1", "--alpha", "1", "--beta", "1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1.666666666666667e-1"));

    let out = mmba(&[
        "closed-form", "bc", "--n", "1", "--m", "1", "--alpha", "-1.5", "--rho", "-3",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("-4.1666666666666"));
}

#[test]
fn verify_rows_and_exit_codes() {
    let out = mmba(&["verify", "identity", "--group", "A1", "--m", "1", "--lambda", "1", "--mu", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let body = stdout(&out);
    assert!(body.contains("\"pass\": true"));

    let out = mmba(&["verify", "xi-independence", "--group", "A2", "--m", "1"]);
    assert!(out.status.success());

    // usage error -> clap exit code 2
    let out = mmba(&["verify", "identity", "--group", "A1", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));

    // unknown case -> usage error
    let out = mmba(&["verify", "unknown-case"]);
    assert_eq!(out.status.code(), Some(2));

    // non-convergence demanded -> 3
    let out = mmba(&[
        "verify", "origin", "--group", "A1", "--m", "3", "--quad", "8", "--quad-tol", "1e-13",
        "--xi", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn construct_golden_and_budget() {
    let out = mmba(&["construct", "--group", "A1", "--m", "1", "--check"]);
    assert!(out.status.success());
    let body = stdout(&out);
    let json: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(json["terms"].as_array().unwrap().len(), 2);
    assert_eq!(json["terms"][0]["coeff"][0], -2);

    // documented failure mode: the budget trips on a large construction
    let out = mmba(&["construct", "--group", "F4", "--m", "1", "--budget", "20000"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("term budget"));
}

#[test]
fn acceptance_fast_deterministic() {
    let dir = std::env::temp_dir();
    let p1 = dir.join("mmba_report_1.json");
    let p2 = dir.join("mmba_report_2.json");
    let out = mmba(&[
        "acceptance", "--suite", "fast", "--seed", "42", "--report",
        p1.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let out = mmba(&[
        "acceptance", "--suite", "fast", "--seed", "42", "--report",
        p2.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let b1 = std::fs::read(&p1).unwrap();
    let b2 = std::fs::read(&p2).unwrap();
    assert_eq!(b1, b2, "reports must be byte-identical");
    let report: serde_json::Value = serde_json::from_slice(&b1).unwrap();
    assert_eq!(report["version"], "1");
    assert_eq!(report["config"]["seed"], 42);
    let _ = std::fs::remove_file(p1);
    let _ = std::fs::remove_file(p2);
}

#[test]
fn csv_emission() {
    let out = mmba(&[
        "verify", "origin", "--group", "A1", "--m", "1", "--emit", "csv",
    ]);
    assert!(out.status.success());
    let body = stdout(&out);
    assert!(body.starts_with("case,source,route_a_re"));
}
