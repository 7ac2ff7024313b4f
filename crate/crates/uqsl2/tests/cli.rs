use std::process::{Command, Output};

use serde_json::Value;

fn uqsl2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uqsl2")).args(args).env_remove("UQSL2_JOBS").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn verify_all_at_p2() {
    let out = uqsl2(&["verify", "--p", "2", "--suite", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    let passes = text.lines().filter(|l| l.trim_start().starts_with("PASS")).count();
    assert!((55..=90).contains(&passes), "{passes} checks");
    assert!(!text.contains("FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(uqsl2(&["verify", "--p", "1"]).status.code(), Some(2));
    assert_eq!(uqsl2(&["verify", "--p", "2", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(uqsl2(&["tables", "--p", "2", "--s", "3"]).status.code(), Some(2));
    assert_eq!(uqsl2(&["calc", "--p", "2", "--expr", "E +"]).status.code(), Some(2));
    assert_eq!(uqsl2(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn slf_json_report_at_p3() {
    let out = uqsl2(&["verify", "--p", "3", "--suite", "slf", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], Value::Bool(true));
    let checks = v["reports"][0]["checks"].as_array().unwrap();
    let dim = checks.iter().find(|c| c["name"] == "slf_space_dimension").unwrap();
    assert!(dim["detail"].as_str().unwrap().starts_with("8 "));
    let report = uqsl2::format::report_from_json(&v["reports"][0]).unwrap();
    assert_eq!(uqsl2::format::report_to_json(&report, false), v["reports"][0]);
}

#[test]
fn output_is_deterministic_across_worker_counts() {
    let a = uqsl2(&["verify", "--p", "2", "--format", "json", "--jobs", "1"]);
    let b = uqsl2(&["verify", "--p", "2", "--format", "json", "--jobs", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table_for_q1_at_p2() {
    let out = uqsl2(&["tables", "--p", "2", "--s", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["cells"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 8));
    let results: Vec<&str> = rows.iter().flat_map(|r| r.as_array().unwrap()).map(|c| c["result"].as_str().unwrap()).collect();
    assert!(!results.contains(&"?"));
    assert!(results.iter().any(|r| *r != "0"));
}

#[test]
fn coefficients_at_p2() {
    let out = uqsl2(&["export", "--p", "2", "--what", "coefficients"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["alpha0"], "-1/4");
    assert_eq!(v["alphap"], "1/4");
    assert_eq!(v["alphas"], serde_json::json!(["0", "0"]));
    assert_eq!(v["betas"], serde_json::json!(["1/4"]));
    assert_eq!(v["matches_closed_forms"], Value::Bool(true));
}

#[test]
fn idempotents_at_p3() {
    let out = uqsl2(&["export", "--p", "3", "--what", "idempotents"]);
    assert_eq!(out.status.code(), Some(0));
    let list = json(&out);
    let list = list.as_array().unwrap();
    assert_eq!(list.len(), 12);
    let uq = uqsl2_core::Uq::new(3).unwrap();
    let sum = list.iter().fold(uq.zero(), |acc, x| &acc + &uqsl2::format::alg_from_json(&uq, &x["element"]).unwrap());
    assert_eq!(sum, uq.one());
}

#[test]
fn slf_basis_export_roundtrips() {
    let dir = std::env::temp_dir().join(format!("uqsl2-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("slf.json");
    let out = uqsl2(&["export", "--p", "2", "--what", "slf-basis", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let uq = uqsl2_core::Uq::new(2).unwrap();
    let fs = v["functionals"].as_array().unwrap();
    assert_eq!(fs.len(), 5);
    for f in fs {
        let parsed = uqsl2::format::functional_from_json(&uq, &f["functional"]).unwrap();
        assert_eq!(uqsl2::format::functional_to_json(&parsed), f["functional"]);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn calc_operations() {
    let out = uqsl2(&["calc", "--p", "3", "--expr", "E*F - F*E - (K - K^-1)*[1]", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["p"], 3);
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    let out = uqsl2(&["calc", "--p", "2", "--expr", "E", "--op", "coproduct", "--format", "json"]);
    assert_eq!(json(&out)["terms"].as_array().unwrap().len(), 2);
    let out = uqsl2(&["calc", "--p", "2", "--expr", "K^3", "--op", "counit"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "1");
}

#[test]
fn large_p_warns() {
    let out = uqsl2(&["calc", "--p", "9", "--expr", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let out = uqsl2(&["tables", "--p", "9", "--s", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}
