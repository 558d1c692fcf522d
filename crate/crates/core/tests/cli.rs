use std::process::Command;

use serde_json::Value;

use rainbow_saturation::cli::{run, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE};
use rainbow_saturation::dimacs_path::{model_text, solve_dimacs, SolverOutcome};
use rainbow_saturation::search::Budget;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rainbow-sat").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_rainbow-sat"))
        .args(["--format", "graph6", "construct", "--fixture", "core"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "Gn~nl{");
}

#[test]
fn construct_reports_counts() {
    let v = json(&["construct", "--target", "c5", "--n", "10"]);
    assert_eq!(v["expected_edge_count"], 21);
    assert_eq!(v["witness_verified"], true);
    let v = json(&["construct", "--fixture", "H"]);
    assert_eq!(v["graph"]["edges"].as_array().unwrap().len(), 38);
}

#[test]
fn bad_input_is_a_usage_error() {
    assert_eq!(call(&["construct", "--target", "c4", "--n", "3"]).0, EXIT_USAGE);
    assert_eq!(call(&["color", "--graph6", "???"]).0, EXIT_USAGE);
    assert_eq!(call(&["color", "--fixture", "nope", "--k", "6"]).0, EXIT_USAGE);
    assert_eq!(call(&["color", "--graph6", "C~", "--k", "2"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn budget_exhaustion_exits_with_unknown() {
    let (code, out, _) = call(&["--node-limit", "1", "color", "--fixture", "H", "--k", "6"]);
    assert_eq!(code, EXIT_UNKNOWN);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "UNKNOWN");
}

#[test]
fn engines_agree_on_the_command_line() {
    let v = json(&["color", "--graph6", "C~", "--k", "4", "--engine", "backtrack,cnf,compact"]);
    assert_eq!(v["status"], "FEASIBLE");
    assert_eq!(v["engines"].as_array().unwrap().len(), 3);
    let v = json(&["color", "--graph6", "Bw", "--k", "3", "--engine", "backtrack,cnf"]);
    assert_eq!(v["status"], "INFEASIBLE");
}

#[test]
fn deterministic_output_is_stable() {
    let args = ["--deterministic", "check-saturated", "--target", "c4", "--n", "8"];
    let (_, a, _) = call(&args);
    let (_, b, _) = call(&args);
    assert_eq!(a, b);
    assert!(!a.contains("elapsed_ms"));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["is_saturated"], "TRUE");
}

#[test]
fn verify_coloring_flags_rainbow_copies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    // C4 with four distinct colors
    std::fs::write(&path, r#"{"0":0,"1":1,"2":2,"3":3}"#).unwrap();
    let (code, out, _) = call(&["verify-coloring", "--graph6", "Cr", "--k", "4", "--coloring", path.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["check"]["rainbow_free"], false);
    std::fs::write(&path, r#"{"0":0,"1":1,"2":1,"3":0}"#).unwrap();
    let v = json(&["verify-coloring", "--graph6", "Cr", "--k", "4", "--coloring", path.to_str().unwrap()]);
    assert_eq!(v["check"]["rainbow_free"], true);
    assert_eq!(v["check"]["proper"], true);
}

#[test]
fn export_solve_decode() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("f.cnf");
    let model = dir.path().join("f.model");
    let sidecar = dir.path().join("f.json");
    let (code, _, err) = call(&[
        "--format", "dimacs", "-o", cnf.to_str().unwrap(),
        "export-cnf", "--target", "c4", "--n", "7", "--k", "4", "--colors", "6", "--exact",
        "--sidecar", sidecar.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let text = std::fs::read_to_string(&cnf).unwrap();
    let SolverOutcome::Sat(lits) = solve_dimacs(&text, Budget::UNLIMITED).unwrap() else {
        panic!("expected a model");
    };
    std::fs::write(&model, format!("s SATISFIABLE\n{}", model_text(&lits))).unwrap();
    let v = json(&[
        "decode-model", "--target", "c4", "--n", "7", "--k", "4", "--colors", "6", "--exact",
        "--model", model.to_str().unwrap(),
    ]);
    assert_eq!(v["verified"], true);
    let side: Value = serde_json::from_str(&std::fs::read_to_string(&sidecar).unwrap()).unwrap();
    assert!(side.is_object());
}

#[test]
fn small_reports() {
    let v = json(&["max-free", "--graph6", "C~", "--k", "4"]);
    assert_eq!(v["best_count"], 4);
    let v = json(&["sat-star", "--n", "4", "--k", "4"]);
    assert_eq!(v["result"]["value"], 6);
    let v = json(&["audit", "--lemma-traps"]);
    assert_eq!(v["all_infeasible"], true);
    let v = json(&["color-interval", "--graph6", "C~", "--k", "4", "--c-max", "6"]);
    assert_eq!(v["members"], serde_json::json!([3, 4]));
    let (code, out, _) = call(&["--format", "dot", "construct", "--target", "c4", "--n", "7"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("graph G {"));
}
