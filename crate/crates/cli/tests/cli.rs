use crep_core::algebra::{ParamPoint, QField, RatFunc};
use crep_core::positivity::{Certificate, SosTerm};
use crep_core::reduction::LedgerEntry;
use serde_json::Value;
use std::process::Command;

fn crep(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_crep")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = crep(args);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}")))
}

fn q(v: &Value) -> QField {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn phi_worked_example() {
    let (code, v) = json(&["phi", "--n", "2", "--p", "11/5", "--mu", "2", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], true);
    assert_eq!(v["witnesses"][0]["row"], 1);
    assert_eq!(v["witnesses"][0]["col"], 2);
    assert_eq!(v["discrepancy"], false);
    assert!(!q(&v["suggested_c1"]).is_positive());
}

#[test]
fn phi_on_a_sqrt17_row() {
    let (code, v) = json(&["phi", "--n", "1", "--p", "9/8-1/8*sqrt(17)", "--mu", "1", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["witnesses"][0]["row"], 5);
}

#[test]
fn certify_worked_example_and_round_trip() {
    let (code, v) = json(&["certify", "--n", "2", "--p", "11/5", "--mu", "2", "--c1", "-5/9", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["sos"][1]["coeff"], "22/625");
    assert_eq!(v["sos"][0]["coeff"], "8");
    assert_eq!(v["verified"], true);

    let point: ParamPoint = serde_json::from_value(v["point"].clone()).unwrap();
    let cert = Certificate {
        point,
        sos_terms: v["sos"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| SosTerm { coeff: q(&t["coeff"]), m2: q(&t["m2_coeff"]), m5: q(&t["m5_coeff"]) })
            .collect(),
        ledger: v["ledger"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| LedgerEntry {
                label: e["label"].as_str().unwrap().to_string(),
                multiplier: RatFunc::parse(e["multiplier"].as_str().unwrap()).unwrap(),
            })
            .collect(),
        quad: [q(&v["A"][0]), q(&v["A"][1]), q(&v["A"][2])],
    };
    assert!(cert.verify().unwrap());
}

#[test]
fn certify_infeasible_exit_code() {
    let (code, v) = json(&["certify", "--n", "2", "--p", "1/3", "--mu", "1", "--json"]);
    assert_eq!(code, 2);
    assert_eq!(v["infeasible"], true);
    assert!(!v["violated"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors() {
    assert_eq!(crep(&["phi", "--n", "2", "--p", "1", "--mu", "0"]).0, 1);
    assert_eq!(crep(&["phi", "--n", "2", "--p", "0.5", "--mu", "0"]).0, 1);
    assert_eq!(crep(&["phi", "--n", "2", "--p", "1/2", "--mu", "0", "--bogus"]).0, 1);
    assert_eq!(crep(&["certify", "--n", "2", "--p", "11/5", "--mu", "2", "--c1", "1"]).0, 1);
    assert_eq!(crep(&[]).0, 1);
}

#[test]
fn constraints_latex_layout() {
    let (code, out, _) = crep(&["constraints", "--latex"]);
    assert_eq!(code, 0);
    let eq: Vec<&str> = out.lines().filter(|l| l.starts_with("$R_{")).collect();
    assert_eq!(eq.len(), 28);
    assert!(eq[0].starts_with("$R_{1,a,b}=") && eq[0].ends_with(",$"));
}

#[test]
fn reduce_json_matches_the_displayed_multiplier() {
    let (code, v) = json(&["reduce", "--json"]);
    assert_eq!(code, 0);
    let p7 = RatFunc::parse(v["p7"].as_str().unwrap()).unwrap();
    assert_eq!(p7, RatFunc::parse(crep_core::reduction::P7).unwrap());
    assert_eq!(v["agrees_with_reference"], true);
}

#[test]
fn output_is_deterministic() {
    let a = crep(&["reduce", "--json"]).1;
    let b = crep(&["reduce", "--json"]).1;
    assert_eq!(a, b);
    let a = crep(&["table", "--grid-density", "coarse", "--n", "1"]).1;
    let b = crep(&["table", "--grid-density", "coarse", "--n", "1"]).1;
    assert_eq!(a, b);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("crep-phi-{}.json", std::process::id()));
    let (code, out, _) = crep(&["phi", "--n", "3", "--p", "2", "--mu", "5", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suggested_c1"], "-6");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn selftest_coarse_is_clean() {
    let (code, v) = json(&["selftest", "--grid-density", "coarse", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["findings"].as_array().unwrap().len(), 0);
}

#[test]
fn selftest_reports_an_injected_perturbation() {
    let (code, v) = json(&["selftest", "--grid-density", "coarse", "--perturb-target", "--json"]);
    assert_eq!(code, 3);
    let f = &v["findings"][0];
    assert_eq!(f["kind"], "identity-failure");
    assert!(f["location"].as_str().unwrap().contains("derive_T_ab = build_T_ab"));
}
