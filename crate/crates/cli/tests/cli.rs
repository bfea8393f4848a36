use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compforms"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    let v: Value = serde_json::from_str(&stdout(&o)).expect("stdout is one JSON document");
    (o.status.code().unwrap(), v)
}

#[test]
fn emit_form_text() {
    let o = run(&["emit-form", "--family", "quad2x2", "--params", "0,1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x1^2 + x2^2");
}

#[test]
fn emit_form_json_for_a_system() {
    let (code, v) = json(&["emit-form", "--family", "sextic_uv", "--params", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["components"][0], "x1^2 - 3*x2^2");
    assert_eq!(v["params"], serde_json::json!(["3"]));
}

#[test]
fn solve_quartic_sequence() {
    let (code, v) = json(&[
        "solve", "--family", "quartic4x4", "--params", "5,-23,2,-7", "--seed", "6,2,3,1",
        "--step", "6,2,3,1", "--count", "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["solutions"][1], serde_json::json!(["352", "121", "192", "66"]));
    assert_eq!(v["verified"], true);
}

#[test]
fn solve_triple_mode_records_order() {
    let (code, v) = json(&[
        "solve", "--family", "threefold8x8", "--params", "3,-1,0,-3,0,-14,1",
        "--seed", "2,6,1,3,7,21,4,12", "--fixed", "1,0,0,0,0,0,0,0",
        "--step", "2,6,1,3,7,21,4,12", "--count", "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], "xyz");
    let firsts: Vec<&str> = v["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s[0].as_str().unwrap())
        .collect();
    assert_eq!(firsts, ["2", "13650", "1660070"]);
}

#[test]
fn verify_octic_is_zero() {
    let o = run(&["verify", "--family", "octic8x8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "ZERO-RESIDUAL"));
}

#[test]
fn verify_threefold_needs_flag() {
    let o = run(&["verify", "--family", "threefold4x4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let (code, v) = json(&["verify", "--family", "threefold4x4", "--threefold"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "ZERO-RESIDUAL");
    assert_eq!(v["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn closure_reports_certificates_and_witnesses() {
    let (code, v) = json(&["closure", "--family", "quartic4x4", "--order", "pair"]);
    assert_eq!(code, 0);
    assert_eq!(v["closed"], true);
    assert_eq!(v["coordinates"].as_array().unwrap().len(), 4);

    let (code, v) = json(&["closure", "--family", "threefold4x4", "--order", "pair"]);
    assert_eq!(code, 1);
    assert_eq!(v["closed"], false);
    assert_eq!(v["reason"], "not in span");

    let (code, v) = json(&["closure", "--family", "threefold4x4", "--order", "triple"]);
    assert_eq!(code, 0);
    assert_eq!(v["pair"]["closed"], false);
}

#[test]
fn search_and_invert() {
    let (code, v) = json(&["search", "--family", "quartic4x4", "--params", "5,-23,2,-7", "--bound", "6"]);
    assert_eq!(code, 0);
    let sols = v["solutions"].as_array().unwrap();
    assert!(sols.contains(&serde_json::json!(["6", "2", "3", "1"])));

    let (code, v) = json(&["invert", "--family", "quartic4x4", "--params", "5,-23,2,-7", "--point", "6,2,3,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["inverse"], serde_json::json!(["32", "-4", "-8", "1"]));

    let o = run(&["invert", "--family", "quartic4x4", "--params", "5,-23,2,-7", "--point", "2,0,0,0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn block_renames_clashing_parameters() {
    let (code, v) = json(&["block", "--outer", "quad2x2", "--inner", "quad2x2"]);
    assert_eq!(code, 0);
    let text = v.to_string();
    assert!(text.contains("p_in") && text.contains("q_in"));
    let o = run(&["block", "--outer", "quad2x2", "--inner", "cubic3x3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["emit-form", "--family", "nonic"],
        &["emit-form", "--family", "quad2x2", "--params", "1"],
        &["solve", "--family", "quartic4x4", "--params", "symbolic", "--seed", "1,0,0,0", "--step", "1,0,0,0", "--count", "1"],
        &["search", "--family", "octic8x8", "--params", "0,-5,0,-3,0,-14", "--bound", "50"],
        &["verify", "--family", "quad2x2", "--format", "xml"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn seed_that_is_not_a_solution_fails() {
    let o = run(&[
        "solve", "--family", "quartic4x4", "--params", "5,-23,2,-7", "--seed", "2,0,0,0",
        "--step", "6,2,3,1", "--count", "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["emit-form", "--family", "quartic4x4", "--format", "json", "--threads", "4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn list_families_json() {
    let (code, v) = json(&["list-families"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|f| f["name"].as_str().unwrap()).collect();
    assert_eq!(names.len(), 10);
    assert!(names.contains(&"threefold8x8"));
}
