//! End-to-end tests of the `hecke` binary: worked examples, JSON round
//! trips, and the exit-code contract.

use std::process::{Command, Output};

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn rsk_worked_example() {
    let out = hecke(&["rsk", "--n", "6", "--word", "1 3 4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "P:\n1 3 5 6\n2 4\nQ:\n1 3 4 6\n2 5\n");

    let json = hecke(&["rsk", "--n", "6", "--word", "1 3 4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["w"], serde_json::json!([2, 1, 4, 5, 3, 6]));
    assert_eq!(v["p"]["rows"], serde_json::json!([[1, 3, 5, 6], [2, 4]]));

    // the same permutation in one-line notation
    let out2 = hecke(&["rsk", "--n", "6", "--oneline", "2 1 4 5 3 6"]);
    assert_eq!(stdout(&out), stdout(&out2));
}

#[test]
fn klpoly_and_mu() {
    let out = hecke(&["klpoly", "--n", "4", "--y", "word:2", "--w", "word:2 1 3 2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1+q");

    let out = hecke(&["mu", "--n", "2", "--z", "word:", "--w", "word:1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn basis_expand_round_trips_through_json() {
    let out = hecke(&[
        "basis-expand",
        "--n",
        "3",
        "--element",
        "Cp:word:1",
        "--target",
        "murphy",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // the echoed element is accepted back via --input-json
    let echo = serde_json::to_string(&v["element"]).unwrap();
    let again = hecke(&[
        "basis-expand",
        "--n",
        "3",
        "--input-json",
        &echo,
        "--target",
        "murphy",
        "--format",
        "json",
    ]);
    assert!(again.status.success());
    assert_eq!(stdout(&out), stdout(&again));
}

#[test]
fn deterministic_output() {
    let args = ["cells", "--n", "4", "--side", "left", "--format", "json"];
    let a = hecke(&args);
    let b = hecke(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b), "identical invocations must agree byte for byte");
}

#[test]
fn restrict_accepts_emitted_tableaux() {
    let out = hecke(&["rsk", "--n", "6", "--word", "1 3 4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let q = serde_json::to_string(&v["q"]).unwrap();
    let restricted = hecke(&["restrict", "--tableau", &q, "--m", "3"]);
    assert!(restricted.status.success());
    assert_eq!(stdout(&restricted), "1 3\n2\n");
}

#[test]
fn dominance_modes() {
    let out = hecke(&["dominance", "--a", "3 1", "--b", "2 2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "a dominates b: true\nb dominates a: false\n");

    let ta = r#"{"rows":[[1,2],[3]]}"#;
    let tb = r#"{"rows":[[1,3],[2]]}"#;
    let out = hecke(&["dominance", "--ta", ta, "--tb", tb, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["a_dominates_b"], serde_json::json!(true));
    assert_eq!(v["b_dominates_a"], serde_json::json!(false));
}

#[test]
fn verify_counterexamples_passes() {
    let out = hecke(&["verify", "--suite", "counterexamples"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn verify_writes_report_file() {
    let dir = std::env::temp_dir().join("hecke-cli-test-report.json");
    let path = dir.to_str().unwrap();
    let out = hecke(&["verify", "--suite", "parabolic", "--n-max", "3", "--out", path]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(report[0]["suite"], "parabolic");
    assert_eq!(report.as_array().unwrap().len(), 3);
    std::fs::remove_file(path).ok();
}

#[test]
fn exit_codes() {
    // bad input: 2
    let out = hecke(&["rsk", "--n", "3", "--oneline", "1 1 2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hecke(&["rsk", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hecke(&["klpoly", "--n", "3", "--y", "nope:1", "--w", "word:1"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown flags through clap: 2
    let out = hecke(&["rsk", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    // tableaux with gap entries are rejected, not panicked on
    let out = hecke(&["restrict", "--tableau", r#"{"rows":[[1,5],[2]]}"#, "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hecke(&["dominance", "--ta", r#"{"rows":[[1,5],[2]]}"#, "--tb", r#"{"rows":[[1,2],[3]]}"#]);
    assert_eq!(out.status.code(), Some(2));
    // rank cap: 3
    let out = hecke(&["cells", "--n", "9", "--side", "left"]);
    assert_eq!(out.status.code(), Some(3));
    let out = hecke(&["verify", "--suite", "dominance", "--n-max", "9"]);
    assert_eq!(out.status.code(), Some(3));
    // env override opens the gate (and the small rank still works)
    let out = Command::new(env!("CARGO_BIN_EXE_hecke"))
        .env("HECKE_N_MAX", "3")
        .args(["cells", "--n", "4", "--side", "left"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
