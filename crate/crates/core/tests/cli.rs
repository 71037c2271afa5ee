use std::process::{Command, Output};

use kripke_st::model::{load_model, validate};
use kripke_st::semantics;
use kripke_st::{Formula, Inference};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kripke-st"))
        .args(args)
        .env_remove("KRIPKE_ST_CEILING")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// The certificate printed after the report line.
fn certificate(o: &Output) -> String {
    stdout(o).lines().skip(1).take_while(|l| !l.starts_with("reduced:")).map(|l| format!("{l}\n")).collect()
}

#[test]
fn minimal_st_refutes_the_tautology() {
    let o = run(&["check", "--logic", "minimal", "--mode", "st", "--max-worlds", "2", "=> ~a -> (a -> b)"]);
    assert_eq!(o.status.code(), Some(1));
    let m = load_model(&certificate(&o)).unwrap();
    let inf: Inference = "=> ~a -> (a -> b)".parse().unwrap();
    assert!(!semantics::satisfies_inference(&m, &inf));
}

#[test]
fn classical_explosion_holds() {
    let o = run(&["check", "--logic", "classical", "--mode", "st", "a, ~a => b"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a, ~a => b | classical | st | holds-exact\n");
}

#[test]
fn countermodel_distinguishes_inconclusive() {
    let o = run(&["countermodel", "--logic", "intuitionistic", "--mode", "st", "a, ~a => b"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["check", "--logic", "intuitionistic", "--mode", "st", "a, ~a => b"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["countermodel", "--logic", "classical", "--mode", "st", "a, ~a => b"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn certificates_written_to_file_reload() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.model");
    let p = path.to_str().unwrap();
    let o = run(&[
        "countermodel", "--logic", "minimal", "--mode", "tarskian", "--max-worlds", "2", "--cert-out", p,
        "=> ~~(~a -> (a -> b))",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).trim_end().ends_with(p));
    let m = load_model(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(validate(&m).is_empty());
    let f: Formula = "~~(~a -> (a -> b))".parse().unwrap();
    assert!(!semantics::is_true(&m, &f));
}

#[test]
fn multi_succedent_st_reports_both_verdicts() {
    let o = run(&["check", "--logic", "intuitionistic", "--mode", "st", "=> a, b"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{out}");
    assert!(out.lines().any(|l| l == "reduced: => a | b | fails"), "{out}");
}

#[test]
fn meta_mode_takes_brackets() {
    let o = run(&["check", "--logic", "classical", "--mode", "meta", "[ => a ; => b ] =>* [ => a & b ]"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["check", "--logic", "classical", "--mode", "meta", "=> a"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn eval_prints_each_world() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.model");
    std::fs::write(&path, "kind minimal\nworld w\nworld v\nrel w v\ntrue w a\ntrue v a bot\n").unwrap();
    let o = run(&["eval", path.to_str().unwrap(), "~~(~a -> (a -> b))"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "w: 0\nv: 1\ntrue: no\nfalse: yes\n");
}

#[test]
fn errors_exit_three_with_one_line() {
    for args in [
        &["check", "--logic", "minimal", "=> a &"][..],
        &["check", "--logic", "modal", "=> a"],
        &["eval", "/nonexistent/model", "a"],
        &["check", "--logic", "minimal", "--mode", "tarskian", "=> a, b"],
        &["random-test", "heredity", "--trials", "0"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.model");
    std::fs::write(&path, "kind intuitionistic\nworld w\ntrue w bot\n").unwrap();
    let o = run(&["eval", path.to_str().unwrap(), "a"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);
}

#[test]
fn ceiling_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_kripke-st"))
        .args(["check", "--logic", "minimal", "--max-worlds", "4", "=> a"])
        .env("KRIPKE_ST_CEILING", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ceiling"));
}

#[test]
fn random_tests_are_reproducible() {
    for property in ["glivenko", "thm44", "st-classical", "reduction", "heredity"] {
        let args = ["random-test", property, "--trials", "10", "--seed", "42", "--max-worlds", "2", "--depth", "3"];
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{property}: {}", stdout(&a));
        assert_eq!(a.stdout, b.stdout);
        assert!(stdout(&a).starts_with("seed 42\n"));
    }
}

#[test]
fn paper_suite_passes_and_is_deterministic() {
    let a = run(&["paper-suite", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = run(&["paper-suite", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("0 failed\n"));
}
