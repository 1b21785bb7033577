use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quiverstack"))
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const A5: &str = "field Q\nvertex 1 2 3 4 5\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\narrow a4 4 5\n\
                  zero a2*a1\nzero a3*a2\nzero a4*a3\npartition E' = 4, 5; E'' = 1, 2, 3\n";

#[test]
fn algebra_info_and_dot() {
    let alg = scratch("a5.alg", A5);
    let out = run(&["algebra", "info", alg.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dimension"], 9);
    let out = run(&["algebra", "dot", alg.to_str().unwrap()]);
    assert!(stdout(&out).contains("cluster_upper"));
}

#[test]
fn module_pdim_on_a5() {
    let alg = scratch("a5m.alg", A5);
    let m = scratch("s1.mod", "top x: 1\n");
    let out = run(&["module", "pdim", "--algebra", alg.to_str().unwrap(), "--graph", m.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pdim"], "4");
    let out = run(&["module", "layers", "--algebra", alg.to_str().unwrap(), "--graph", m.to_str().unwrap()]);
    assert!(stdout(&out).contains("loewy_length"));
}

#[test]
fn stack_commands_and_exit_codes() {
    let alg = scratch("a5s.alg", A5);
    let p = alg.to_str().unwrap();
    assert_eq!(run(&["stack", "check", p]).status.code(), Some(0));
    let bad = run(&["stack", "check", p, "--partition", "E'=1,2,3;E''=4,5"]);
    assert_eq!(bad.status.code(), Some(1));
    let out = run(&["stack", "invariants", p]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["findim_bound"]["hi"], 4);
}

#[test]
fn parse_errors_exit_with_two() {
    let alg = scratch("broken.alg", "vertex 1\narrow a 1 9\n");
    let out = run(&["algebra", "info", alg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:11"));
    assert_eq!(run(&["theorem10", "--jumps", "1:2,1:3"]).status.code(), Some(2));
}

#[test]
fn monomial_report_interval() {
    let alg = scratch("a5r.alg", A5);
    let out = run(&["monomial", "report", alg.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["interval"], serde_json::json!([v["s"].as_i64().unwrap() + 1, v["s"].as_i64().unwrap() + 2]));
}

#[test]
fn theorem10_writes_family() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("family-1-2-2-3");
    let out = run(&["theorem10", "--jumps", "1:2,2:3", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    for f in ["lambda0.alg", "lambda1.alg", "witness1.mod", "lambda1.dot", "witness1.dot"] {
        assert!(dir.join(f).exists(), "{f}");
    }
    let m = run(&[
        "module",
        "pdim",
        "--algebra",
        dir.join("lambda1.alg").to_str().unwrap(),
        "--graph",
        dir.join("witness1.mod").to_str().unwrap(),
        "--field",
        "F2",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&m)).unwrap();
    assert_eq!(v["pdim"], "3");
}

#[test]
fn oracle_on_a5() {
    let alg = scratch("a5o.alg", A5);
    let out = run(&["oracle", "--algebra", alg.to_str().unwrap(), "--n", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["observed"], 4);
}

#[test]
fn acceptance_single_criterion() {
    let out = run(&["verify-paper", "--only", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PASS criterion 1"));
}
