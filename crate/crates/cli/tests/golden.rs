mod common;

use common::{check_golden, sn, CASES};

#[test]
fn golden_transcripts_match() {
    let failures = check_golden();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn case_names_are_unique() {
    let mut names: Vec<_> = CASES.iter().map(|c| c.name).collect();
    names.sort_unstable();
    names.dedup();
    assert_eq!(names.len(), CASES.len());
}

#[test]
fn identities_output_is_independent_of_scheduling() {
    let args = ["identities", "--dims", "1..3", "--trials", "4", "--suites", "schouten,exterior,poisson"];
    let parallel = sn().args(args).output().unwrap();
    let sequential = sn().args(args).arg("--sequential").output().unwrap();
    assert!(parallel.status.success());
    assert_eq!(parallel.stdout, sequential.stdout);
}

#[test]
fn identities_json_is_valid() {
    let out = sn()
        .args(["identities", "--dims", "2", "--trials", "2", "--suites", "flow", "--json"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["identities"].as_array().unwrap().len(), 3);
    assert_eq!(v["seed"], 0);
}

#[test]
fn clap_errors_exit_2() {
    let out = sn().args(["bracket", "--dim", "2", "x1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = sn().args(["bracket", "--dim", "2", "--method", "other", "x1", "e1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
