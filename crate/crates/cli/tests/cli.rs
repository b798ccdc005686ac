use std::process::{Command, Output};

use serde_json::Value;

fn finquat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finquat"))
        .args(args)
        .env_remove("FINQUAT_MAX_BRUTE_P")
        .env_remove("FINQUAT_MAX_HORIZON")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = finquat(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    finquat(args).status.code().expect("exit code")
}

#[test]
fn envelope_shape() {
    let v = json(&["period", "5"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "parameters", "result", "warnings"]);
    assert_eq!(v["command"], "period");
    assert_eq!(v["parameters"]["m"], 5);
    assert!(v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn periods() {
    for (m, z, k, rel) in [("5", 5, 20, "k=4z"), ("3", 4, 8, "k=2z"), ("7", 8, 16, "k=2z")] {
        let r = &json(&["period", m])["result"];
        assert_eq!((r["z"].as_u64(), r["k"].as_u64()), (Some(z), Some(k)), "m={m}");
        assert_eq!(r["relation"], rel);
    }
    let composite = &json(&["period", "10"])["result"];
    assert_eq!(composite["k"], 60);
    assert!(composite["z"].is_null());
}

#[test]
fn cycle_mod_three() {
    let r = &json(&["cycle", "3"])["result"];
    assert_eq!(r["cycle"], serde_json::json!([0, 1, 1, 2, 0, 2, 2, 1]));
}

#[test]
fn classify_fib_examples() {
    let r = &json(&["classify-fib", "--n", "0", "--p", "2"])["result"];
    assert_eq!(r["verdict"], "ZeroDivisor");
    assert_eq!(r["compact"], "i+j");
    assert_eq!(r["element"], "0 + 1·i + 1·j + 0·k");

    let r = &json(&["classify-fib", "--n", "9", "--p", "13"])["result"];
    assert_eq!(r["verdict"], "ZeroDivisor");
    assert_eq!(r["rule"]["id"], "fib-entry-point-odd");
    assert_eq!(r["sun_family_l"], 1);

    let r = &json(&["classify-fib", "--n", "0", "--p", "5"])["result"];
    assert_eq!(r["verdict"], "Unit");
}

#[test]
fn classify_gfl_examples() {
    let r = &json(&["classify-gfl", "--pc", "1", "--qc", "2", "--n", "1", "--r", "5"])["result"];
    assert_eq!(r["verdict"], "ZeroDivisor");
    assert_eq!(r["rule"]["id"], "gfl-mod5-q-eq-2p");
    let r = &json(&["classify-gfl", "--pc", "-2", "--qc", "3", "--n", "4", "--r", "3"])["result"];
    assert_eq!(r["rule"]["id"], "gfl-mod3-all");
    assert_ne!(r["verdict"], "Unit");
    let v = json(&["classify-gfl", "--pc", "1", "--qc", "1", "--n", "0", "--r", "7"]);
    assert!(v["result"]["rule"].is_null());
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn enumerate_counts() {
    let r = &json(&["enumerate", "--p", "3"])["result"];
    assert_eq!(r["elements"].as_array().unwrap().len(), 8);
    assert!(r["elements"].as_array().unwrap().iter().all(|e| e["verdict"] == "ZeroDivisor"));

    let r = &json(&["enumerate", "--p", "5"])["result"];
    assert_eq!(r["counts"], serde_json::json!({"zero_divisors": 4, "units": 16}));

    let v = json(&["enumerate", "--p", "11"]);
    assert_eq!(v["result"]["counts"], serde_json::json!({"zero_divisors": 0, "units": 10}));
    assert!(v["warnings"][0].as_str().unwrap().starts_with("z(p) even"));
}

#[test]
fn census_and_guardrails() {
    assert_eq!(json(&["census", "--p", "7"])["result"]["non_units"], 385);
    assert_eq!(json(&["census", "--p", "97", "--mode", "formula"])["result"]["non_units"], 97 * 97 * 97 + 97 * 97 - 97);
    let two = json(&["census", "--p", "2"]);
    assert_eq!(two["result"]["non_units"], 8);
    assert!(two["warnings"][0].as_str().unwrap().starts_with("census-at-two"));
    assert_eq!(code(&["census", "--p", "13"]), 3);
    assert_eq!(code(&["census", "--p", "13", "--max-brute-p", "13"]), 0);
    assert_eq!(code(&["census", "--p", "2", "--mode", "formula"]), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_finquat"))
        .args(["census", "--p", "13"])
        .env("FINQUAT_MAX_BRUTE_P", "13")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn verify_suites() {
    let v = json(&["verify", "--suite", "census", "--max-p", "7"]);
    assert_eq!(v["result"]["passed"], true);
    let names: Vec<&str> = v["result"]["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["census.p=2", "census.p=3", "census.p=5", "census.p=7"]);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
    let d = &v["result"]["checks"][0]["discrepancies"][0];
    assert_eq!((d["claimed"].as_str(), d["computed"].as_str()), (Some("10"), Some("8")));
    assert_eq!(d["erratum"], "census-at-two");

    assert_eq!(json(&["verify", "--suite", "sequences"])["result"]["passed"], true);
    assert_eq!(code(&["verify", "--suite", "all", "--max-p", "5"]), 0);
    let all = json(&["verify"]);
    assert!(all["result"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_is_byte_stable() {
    let a = finquat(&["verify", "--suite", "all", "--max-p", "13"]).stdout;
    let b = finquat(&["verify", "--suite", "all", "--max-p", "13"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["classify-fib", "--n", "1", "--p", "4"]), 2);
    assert_eq!(code(&["sun-check", "--p", "5"]), 2);
    assert_eq!(code(&["nonsense"]), 2);
    assert_eq!(code(&["verify", "--suite", "fib", "--horizon", "20000"]), 3);
    assert_eq!(code(&["enumerate", "--p", "7919", "--max-horizon", "100"]), 3);
    assert_eq!(code(&["verify", "--suite", "census", "--max-brute-p", "29", "--max-p", "29"]), 3);
}

#[test]
fn table_format() {
    let out = finquat(&["period", "5", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command: period\n"));
    assert!(text.contains("relation  k=4z"));
}

#[test]
fn sun_check() {
    let r = &json(&["sun-check", "--p", "13"])["result"];
    assert_eq!((r["index"].as_u64(), r["lhs"].as_u64(), r["holds"].as_bool()), (Some(7), Some(0), Some(true)));
}
