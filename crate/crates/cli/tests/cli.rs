use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn prigid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prigid")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn group_examples() {
    let out = prigid(&["group", "theoremA", "theta(3,1,1,3)"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["verdicts"]["equal"], true);

    let r = json(&prigid(&["group", "theoremA", "ut(4,3,1)"]));
    assert_eq!(r["verdicts"]["equal"], false);
    assert!(r["witnesses"]["lambda3_element_outside_frattini_squared"].is_array());

    let r = json(&prigid(&["group", "series", "theta(3,1,1,1)"]));
    assert_eq!(r["verdicts"]["nontrivial_terms"], 1);

    let r = json(&prigid(&["group", "dimension", "theta(3,1,1,3)"]));
    assert_eq!(r["verdicts"]["closed_form_agrees"], true);
    assert_eq!(r["notes"][0]["level"], "WARN");
    assert_eq!(r["notes"][0]["stated"], "|D_3/D_4| = p^|I| = 3");
}

#[test]
fn field_examples() {
    let r = json(&prigid(&["rigidity", "check", "laurent(7,64)", "--p", "3"]));
    assert_eq!(r["verdicts"]["rigid"], true);
    assert_eq!(r["verdicts"]["completeness"], "complete");

    let r = json(&prigid(&["rigidity", "check", "gf(7)", "--p", "3"]));
    assert_eq!(r["verdicts"]["completeness"], "trivial");
    assert_eq!(r["verdicts"]["dimension"], 1);

    let r = json(&prigid(&["rigidity", "steinberg", "ratfunc(7)", "--p", "3"]));
    assert_eq!(r["verdicts"]["symbol_is_zero"], true);

    let r = json(&prigid(&["tower", "laurent(7,64)", "--p", "3", "--n", "3"]));
    assert_eq!(r["verdicts"]["galois_group"]["order"], 81);
    assert_eq!(r["notes"].as_array().unwrap().len(), 1);

    let r = json(&prigid(&["witness", "ratfunc(7)", "--p", "3"]));
    assert_eq!(r["witnesses"]["certificate"]["v_beta"], 2);
}

#[test]
fn solve_example() {
    let out = prigid(&["solve", "laurent(7,64)", "--p", "3", "--poly", "x^3-(1+t)", "--prec", "3"]);
    assert!(out.status.success());
    let r = json(&out);
    let roots = r["witnesses"]["roots"].as_array().unwrap();
    let root = roots.iter().find(|x| x["series"] == "1 + 5*t + 3*t^2 + O(t^3)").unwrap();
    for key in ["terms", "e", "r", "generators", "residual_valuation"] {
        assert!(!root[key].is_null(), "{key}");
    }
    assert_eq!(root["residual_valuation"], ">= 3");
}

#[test]
fn exit_codes() {
    assert_eq!(prigid(&["group", "theoremA", "theta(3,1,1,2)"]).status.code(), Some(2));
    assert_eq!(prigid(&["group", "powerful", "theta(3,1,3,5)"]).status.code(), Some(3));
    assert_eq!(prigid(&["solve", "laurent(7,64)", "--poly", "X^2 - t"]).status.code(), Some(2));
    assert_eq!(prigid(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_stable_and_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let args = ["rigidity", "element", "ratfunc(7)", "--element", "t"];
    let a = prigid(&args).stdout;
    assert_eq!(a, prigid(&args).stdout);
    assert!(prigid(&[&args[..], &["--json", p]].concat()).status.success());
    assert_eq!(std::fs::read(&path).unwrap(), a);
    assert!(prigid(&["--reverify", p]).status.success());

    let mut r: Value = serde_json::from_slice(&a).unwrap();
    r["witnesses"]["kernel"][0][0] = 2.into();
    std::fs::write(&path, serde_json::to_string_pretty(&r).unwrap()).unwrap();
    assert_eq!(prigid(&["--reverify", p]).status.code(), Some(1));
}

fn write_seed(dir: &Path) -> String {
    let seed = dir.join("seed.json");
    let s = seed.to_str().unwrap().to_string();
    assert!(prigid(&["accept", "--quick", "--write-seed-file", &s]).status.success());
    s
}

#[test]
fn seed_file_tamper_is_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let seed = write_seed(dir.path());
    let ok = prigid(&["accept", "--seed-file", &seed]);
    assert!(ok.status.success());
    assert_eq!(json(&ok)["verdicts"]["reproduction"]["reproduced"], true);

    let text = std::fs::read_to_string(&seed).unwrap().replace("\"seed\": 7003", "\"seed\": 7004");
    std::fs::write(&seed, text).unwrap();
    let bad = prigid(&["accept", "--seed-file", &seed]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["verdicts"]["reproduction"]["reproduced"], false);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("FAIL reproduction"));
}
