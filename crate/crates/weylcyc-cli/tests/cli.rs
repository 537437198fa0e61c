//! End-to-end checks of the command line interface: exit codes, the
//! documented example invocations, and determinism of stdout for a fixed
//! seed.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylcyc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn eval_tau_canonical_cycle() {
    let out = run(&[
        "eval-tau",
        "--n",
        "1",
        "--chain",
        "[1; p1; q1] - [1; q1; p1]",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("= 1/1"), "{text}");
    assert!(text.contains("reference value 2/1"), "{text}");
}

#[test]
fn eval_tau_degenerate_chain_is_zero() {
    let out = run(&["eval-tau", "--n", "1", "--chain", "[1; p1; p1]"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("= 0/1"));
}

#[test]
fn parse_errors_exit_2() {
    let out = run(&["eval-tau", "--n", "1", "--chain", "[1; p1; +]"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("position"), "{err}");
    // clap usage errors also exit 2
    let out2 = run(&["eval-tau", "--n", "1"]);
    assert_eq!(out2.status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_weylcyc"))
        .args(["eval-tau", "--n", "1", "--chain", "[p1*q1; p1*q1; p1*q1]"])
        .env("WEYLCYC_PLAN_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{:?}", out);
}

#[test]
fn verify_suite_exit_codes() {
    let ok = run(&["verify", "--suite", "cyclic", "--n", "1", "--format", "json"]);
    assert!(ok.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(doc["pass"], serde_json::Value::Bool(true));
    assert_eq!(doc["suite"], "cyclic");
    // rationals are p/q strings everywhere
    assert!(doc["checks"][0]["residual"].as_str().unwrap().contains('/'));

    let unknown = run(&["verify", "--suite", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));

    // the comparison suite contains the documented failing clause
    let thm = run(&["verify", "--suite", "thm-1-3", "--samples", "2"]);
    assert_eq!(thm.status.code(), Some(1));
}

#[test]
fn verify_output_is_deterministic() {
    let a = run(&["verify", "--suite", "lemma-3-1", "--samples", "10", "--format", "json"]);
    let b = run(&["verify", "--suite", "lemma-3-1", "--samples", "10", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn bernoulli_table_values() {
    let out = run(&["table", "bernoulli", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in [
        "B_0 = 1/1",
        "B_1 = -1/2",
        "B_2 = 1/6",
        "B_3 = 0/1",
        "B_4 = -1/30",
    ] {
        assert!(text.contains(line), "{text}");
    }
}

#[test]
fn cycle_weight_table_reports_sign_slip() {
    let out = run(&["table", "cycle-weights", "4"]);
    // honest mismatch against the stated closed form: exit 1
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("-1/12"), "{text}");
    assert!(text.contains("sign slip"), "{text}");
}

#[test]
fn chain_file_evaluation() {
    let dir = std::env::temp_dir().join("weylcyc-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("chains.txt");
    std::fs::write(&path, "[1; p1; q1]\n# comment line\n[q1; p1*q1; p1]\n").unwrap();
    let out = run(&["eval-tau", "--n", "1", "--chain-file", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[1; p1; q1] = 1/2"), "{text}");
    assert!(text.contains("[q1; p1*q1; p1] = 1/12"), "{text}");
}

#[test]
fn sigma_chamber_evaluation() {
    // identity permutation reproduces the plain value
    let out = run(&[
        "eval-tau",
        "--n",
        "1",
        "--chain",
        "[q1; p1*q1; p1]",
        "--sigma",
        "1,2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("= 1/12"));
    let swapped = run(&[
        "eval-tau",
        "--n",
        "1",
        "--chain",
        "[q1; p1; p1*q1]",
        "--sigma",
        "2,1",
    ]);
    assert!(swapped.status.success());
}

#[test]
fn matrix_chain_evaluation() {
    // q1 ⊗ E12 against p1 ⊗ id: the index cycle does not close, value 0;
    // with the unit matrix it reduces to r times the scalar value
    let zero = run(&[
        "eval-tau",
        "--n",
        "1",
        "--r",
        "2",
        "--chain",
        "[1; q1*E1_2; p1]",
    ]);
    assert!(zero.status.success());
    assert!(stdout(&zero).contains("= 0/1"));
    let doubled = run(&[
        "eval-tau",
        "--n",
        "1",
        "--r",
        "2",
        "--chain",
        "[1; p1; q1] - [1; q1; p1]",
    ]);
    assert!(doubled.status.success());
    assert!(stdout(&doubled).contains("= 2/1"), "{}", stdout(&doubled));
}
