mod common;

use common::assert_valid;
use serde_json::{json, Value};
use std::process::Command;

fn satcurve(args: &[&str]) -> (Value, i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_satcurve")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (v, out.status.code().unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn r(n: &str, d: &str) -> Value {
    json!({"num": n, "den": d})
}

#[test]
fn every_subcommand_matches_schema() {
    let cases: &[&[&str]] = &[
        &["branches", "--curve", "y^2 - x^3"],
        &["branches", "--curve", "(y^2 - x^3)*(y - x)", "--order", "3"],
        &["branches", "--curve", "x^2 - y^3"],
        &["profile", "--curve", "(y^2 - x^3)^2 - 4*x^5*y - x^7", "--stability", "2"],
        &["lipschitz", "--curve", "y^2 - x^5", "--num", "y", "--den", "x", "--verify"],
        &["lipschitz", "--curve", "y^2 - x^3", "--num", "y^2", "--den", "x"],
        &["lipschitz", "--curve", "y*(y - x)", "--num", "1", "--den", "y"],
        &["ideal", "--curve", "y^2 - x^3", "--num", "y", "--gen", "x", "--gen", "y^2"],
        &["family", "--family", "y^2 - x^2*(x - t)", "--t", "1/4"],
        &["family", "--family", "y^2 - x^3"],
        &["branches", "--curve", "y^2 - x^3 + 1"],
        &["family", "--family", "y^2 - x^3", "--t", "abc"],
    ];
    for args in cases {
        let (v, code, _) = satcurve(args);
        assert_valid(&v);
        assert_eq!(v["command"], json!(args[0]));
        assert_eq!(code == 0, v["status"] == json!("ok"), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let (v, code, err) = satcurve(&["branches", "--curve", "y^2 - "]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], json!("SyntaxError"));
    assert!(err.starts_with("satcurve:"));
    assert_eq!(satcurve(&["branches", "--curve", "y^2 - z"]).1, 2);
    assert_eq!(satcurve(&["branches"]).1, 2);
    assert_eq!(satcurve(&["branches", "--curve", "0"]).1, 2);
    assert_eq!(satcurve(&["branches", "--curve", "y^2 - x^3 + 1"]).1, 2);
    assert_eq!(satcurve(&["branches", "--curve", "(y - x)^2"]).1, 3);
    assert_eq!(satcurve(&["branches", "--curve", "x^2 - y^3", "--no-shear"]).1, 3);
    assert_eq!(satcurve(&["ideal", "--curve", "y^2 - x^3", "--num", "y", "--gen", "0"]).1, 3);
}

#[test]
fn reports_are_deterministic() {
    let args = ["lipschitz", "--curve", "y^2 - x^5", "--num", "y", "--den", "x", "--verify", "--seed", "7"];
    let a = satcurve(&args).0;
    let b = satcurve(&args).0;
    assert_eq!(a, b);
    assert_eq!(a["seed"], json!(7));
}

#[test]
fn input_echo_round_trips() {
    let (v, _, _) = satcurve(&["profile", "--curve=-x^3+y^2"]);
    let echoed = v["input"]["curve"].as_str().unwrap().to_string();
    assert_eq!(echoed, "y^2 - x^3");
    let (w, _, _) = satcurve(&["profile", "--curve", &echoed]);
    assert_eq!(v["result"], w["result"]);
}

#[test]
fn documented_values() {
    let (v, _, _) = satcurve(&["profile", "--curve", "(y^2 - x^3)^2 - 4*x^5*y - x^7"]);
    assert_eq!(v["result"]["distinct_exponents"], json!([r("3", "2"), r("7", "4")]));
    let (v, _, _) = satcurve(&["lipschitz", "--curve", "y^2 - x^5", "--num", "y", "--den", "x"]);
    assert_eq!(v["result"]["verdict"], json!("BoundedNotLipschitz"));
    assert_eq!(v["result"]["per_type"][0]["nu"], r("3", "2"));
    let (v, _, _) = satcurve(&["lipschitz", "--curve", "y^2 - x^3", "--num", "y^2", "--den", "x"]);
    assert_eq!(v["result"]["verdict"], json!("Lipschitz"));
    assert_eq!(v["result"]["per_type"][0]["nu"], json!("inf"));
    let (v, _, _) = satcurve(&["lipschitz", "--curve", "y*(y - x)", "--num", "1", "--den", "y"]);
    assert_eq!(v["result"]["verdict"], json!("Undefined"));
    let (v, _, _) = satcurve(&["family", "--family", "y^2 - x^2*(x - t)", "--t", "1/4"]);
    assert_eq!(v["result"]["verdict"], json!("NotEquisaturated"));
    assert_eq!(v["input"]["t"], json!([r("0", "1"), r("1", "4")]));
}

#[test]
fn sheared_input() {
    let (v, code, _) = satcurve(&["lipschitz", "--curve", "x^2 - y^3", "--num", "x", "--den", "y"]);
    assert_eq!(code, 0);
    assert_ne!(v["shear"], r("0", "1"));
    assert_eq!(v["result"]["verdict"], json!("BoundedNotLipschitz"));
}

#[test]
fn pretty_and_timing() {
    let out = Command::new(env!("CARGO_BIN_EXE_satcurve"))
        .args(["profile", "--curve", "y^3 - x^4", "--pretty"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("distinct_exponents: [4/3]"), "{text}");
    let (v, _, _) = satcurve(&["profile", "--curve", "y^3 - x^4", "--timing"]);
    assert!(v["timing_ms"].is_number());
    assert_valid(&v);
}
