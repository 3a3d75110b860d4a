//! Golden-file cases shared by the golden tests and the acceptance report.
//!
//! Each case records stdout, then stderr, then the exit code in
//! `tests/golden/<name>.txt`. Set `UPDATE_GOLDEN=1` to rewrite the files.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub env: &'static [(&'static str, &'static str)],
}

const fn case(name: &'static str, args: &'static [&'static str]) -> Case {
    Case { name, args, env: &[] }
}

pub const GOLDEN_NON_POISSON: &str = "x1*e1^e2 + x2*e2^e3";

pub const CASES: &[Case] = &[
    case("bracket_function", &["bracket", "--dim", "2", "x1", "e1^e2"]),
    case("bracket_coordinate_fields", &["bracket", "--dim", "2", "e1", "e2"]),
    case(
        "bracket_tulczyjew_convention",
        &["bracket", "--dim", "2", "--convention", "tulczyjew", "x2*e1", "e2"],
    ),
    case(
        "bracket_lichnerowicz_convention",
        &["bracket", "--dim", "2", "--convention", "lichnerowicz", "e1^e2", "x1*x2*e1"],
    ),
    case("bracket_direct_method", &["bracket", "--dim", "3", "--method", "direct", "x3*e1^e2", "x1*e3"]),
    case("bracket_json", &["bracket", "--dim", "2", "--json", "x1", "e1^e2"]),
    case("bracket_form_operand", &["bracket", "--dim", "2", "dx1", "e1"]),
    case("bracket_syntax_error", &["bracket", "--dim", "2", "x1 +", "e1"]),
    case("bracket_index_out_of_range", &["bracket", "--dim", "2", "e3", "e1"]),
    case("d_example", &["d", "--dim", "2", "x1*dx2"]),
    case("pair_example", &["pair", "--dim", "2", "dx1^dx2", "e1^e2"]),
    case("pair_json", &["pair", "--dim", "2", "--json", "x1*dx1^dx2", "e1^e2"]),
    case("lie_example", &["lie", "--dim", "2", "e1", "x1*dx2"]),
    case("wedge_forms", &["wedge", "--dim", "3", "x1*dx1 + dx2", "dx3"]),
    case("wedge_mixed_variance", &["wedge", "--dim", "2", "e1", "dx1"]),
    case("insert_example", &["insert", "--dim", "2", "e2", "dx1^dx2"]),
    case("iota_example", &["iota", "--dim", "2", "dx1", "e1^e2"]),
    case("iota_json", &["iota", "--dim", "2", "--json", "dx2", "x2*e1^e2"]),
    case("pullback_example", &["pullback", "--dim", "1", "--map", "x1", "--map", "x1**2", "dx2"]),
    case(
        "pullback_map_json",
        &["pullback", "--dim", "2", "--map-json", r#"{"src":2,"dst":2,"components":["x1 + x2**2","x2"]}"#, "dx1^dx2"],
    ),
    case("related_true", &["related", "--dim", "2", "--map", "2*x1", "--map", "x2", "e1^e2", "2*e1^e2"]),
    case("related_false", &["related", "--dim", "2", "--map", "2*x1", "--map", "x2", "e1^e2", "e1^e2"]),
    case("poisson_canonical", &["poisson", "--dim", "2", "e1^e2"]),
    case("poisson_so3", &["poisson", "--dim", "3", "x3*e1^e2 + x1*e2^e3 + x2*e3^e1"]),
    case("poisson_golden_non_poisson", &["poisson", "--dim", "3", GOLDEN_NON_POISSON]),
    case(
        "poisson_golden_json",
        &["poisson", "--dim", "3", "--json", "--trials", "1", "--with", "x1", "x2**2", "x3", GOLDEN_NON_POISSON],
    ),
    case("poisson_not_bivector", &["poisson", "--dim", "2", "e1"]),
    case(
        "identities_small",
        &["identities", "--dims", "1..2", "--trials", "5", "--suites", "flow,conventions,schouten"],
    ),
    case(
        "identities_jacobi_variant",
        &["identities", "--dims", "2", "--trials", "5", "--suites", "schouten", "--sign-variant", "jacobi"],
    ),
    case(
        "identities_leibniz_variant",
        &["identities", "--dims", "2", "--trials", "5", "--suites", "schouten", "--sign-variant", "leibniz"],
    ),
    case("identities_zero_trials", &["identities", "--trials", "0", "--suites", "poisson"]),
    Case {
        name: "identities_seed_from_env",
        args: &["identities", "--dims", "3", "--trials", "2", "--suites", "naturality", "--seed", "1"],
        env: &[("SN_SEED", "42")],
    },
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn sn() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sn"));
    cmd.env_remove("SN_SEED");
    cmd
}

/// Runs a case and renders stdout, stderr and exit code as one transcript.
pub fn transcript(case: &Case) -> String {
    let mut cmd = sn();
    cmd.args(case.args);
    for (k, v) in case.env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    format!(
        "{}--- stderr\n{}--- exit {}\n",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
        out.status.code().unwrap_or(-1)
    )
}

/// Compares every case with its golden file; returns the names that differ.
pub fn check_golden() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for case in CASES {
        let path = golden_dir().join(format!("{}.txt", case.name));
        let got = transcript(case);
        if update {
            std::fs::write(&path, &got).expect("golden directory is writable");
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            Ok(want) => failures.push(format!("{}:\n--- want\n{want}--- got\n{got}", case.name)),
            Err(e) => failures.push(format!("{}: {e}", case.name)),
        }
    }
    failures
}
