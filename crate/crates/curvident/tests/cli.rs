//! End-to-end checks of the command-line interface: exit codes, report
//! schema, and byte-identical reruns.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvident"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("curvident-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn verify_einstein_identity_exits_zero() {
    let out = run(&[
        "verify", "--pbar", "1", "--k", "1", "--dim", "2", "--trials", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], "curvident/1");
    assert_eq!(doc["config"]["command"], "verify");
    assert_eq!(doc["verdict"], "identity holds");
    assert_eq!(doc["prediction_matched"], true);
}

#[test]
fn verify_witness_case_exits_zero() {
    let out = run(&[
        "verify", "--pbar", "0", "--k", "2", "--dim", "4", "--trials", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verdict"], "nonvanishing witness found");
    assert!(doc["constants"]["lovelock_over_pfaffian"].is_string());
}

#[test]
fn verify_lorentzian_signature_flag() {
    let out = run(&[
        "verify",
        "--pbar",
        "1",
        "--k",
        "1",
        "--dim",
        "2",
        "--signature",
        "1,1",
        "--trials",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["config"]["signature"], serde_json::json!([1, 1]));
}

#[test]
fn exceptional_cases_exit_two() {
    assert_eq!(
        run(&["verify", "--pbar", "0", "--k", "0", "--dim", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--pbar", "1", "--k", "0", "--dim", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["kernel", "--pbar", "1", "--k", "0"]).status.code(),
        Some(2)
    );
    // malformed signature
    assert_eq!(
        run(&[
            "verify",
            "--pbar",
            "1",
            "--k",
            "1",
            "--dim",
            "2",
            "--signature",
            "abc"
        ])
        .status
        .code(),
        Some(2)
    );
    // bad flags are usage errors
    assert_eq!(run(&["verify", "--nonsense"]).status.code(), Some(2));
}

#[test]
fn dim_table_matches_known_values_and_is_deterministic() {
    let a = temp_path("dims-a.csv");
    let b = temp_path("dims-b.csv");
    for p in [&a, &b] {
        let out = run(&[
            "dim-table",
            "--m-max",
            "4",
            "--n-max",
            "3",
            "--format",
            "csv",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let text_a = std::fs::read(&a).unwrap();
    let text_b = std::fs::read(&b).unwrap();
    assert_eq!(text_a, text_b, "reruns must be byte-identical");
    let text = String::from_utf8(text_a).unwrap();
    assert_eq!(
        text,
        "m,n,dimension\n2,1,1\n2,2,1\n2,3,1\n4,1,1\n4,2,3\n4,3,3\n"
    );
    std::fs::remove_file(a).ok();
    std::fs::remove_file(b).ok();
}

#[test]
fn dim_table_cap_is_enforced() {
    assert_eq!(run(&["dim-table", "--m-max", "10"]).status.code(), Some(2));
    assert_eq!(run(&["dim-table", "--m-max", "3"]).status.code(), Some(2));
}

#[test]
fn kernel_reports_scalar_family() {
    let out = run(&["kernel", "--pbar", "0", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["kernel"][0]["n"], 1);
    assert_eq!(doc["kernel"][0]["dimension"], 1);
    assert_eq!(doc["kernel"][1]["n"], 2);
    assert_eq!(doc["kernel"][1]["dimension"], 0);
    assert_eq!(doc["membership"]["generates_kernel"], true);
    assert_eq!(doc["membership"]["matches_prediction"], true);
    assert_eq!(doc["membership"]["evaluation_cross_check"], true);
}

#[test]
fn kernel_csv_is_a_dimension_table() {
    let out = run(&["kernel", "--pbar", "1", "--k", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "pbar,k,n,dimension\n1,1,2,1\n1,1,3,0\n");
}

#[test]
fn reduce_check_and_normal_dims_run() {
    let out = run(&["reduce-check", "--m-max", "4", "--n-max", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["all_ok"], true);

    let out = run(&["normal-dims", "--n-max", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("r,n,dimension\n2,1,0\n2,2,1\n2,3,6\n"));
}

#[test]
fn verify_reports_are_deterministic_across_reruns() {
    let a = run(&[
        "verify", "--pbar", "0", "--k", "1", "--dim", "2", "--seed", "7",
    ]);
    let b = run(&[
        "verify", "--pbar", "0", "--k", "1", "--dim", "2", "--seed", "7",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[
        "verify", "--pbar", "0", "--k", "1", "--dim", "2", "--seed", "8",
    ]);
    assert_ne!(a.stdout, c.stdout, "different seeds give different trials");
}

#[test]
fn verify_csv_lists_one_row_per_trial() {
    let out = run(&[
        "verify", "--pbar", "0", "--k", "1", "--dim", "2", "--trials", "4", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "trial,exact_zero,witness_index,witness_value");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("0,false,") || lines[1].starts_with("0,true,"));
}

#[test]
fn kernel_reports_are_deterministic_across_reruns() {
    let a = run(&["kernel", "--pbar", "0", "--k", "1", "--seed", "3"]);
    let b = run(&["kernel", "--pbar", "0", "--k", "1", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
