use std::process::{Command, Output};

use serde_json::Value;

fn splitlaw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitlaw")).args(args).env("SPLITLAW_THREADS", "2").output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = splitlaw(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn sequence_terms() {
    let v = json(&["sequence", "--poly", "x^5-x-1", "--count", "21"]);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 21);
    assert_eq!(terms[0], "5");
    assert_eq!(terms[20], "9");
    let v = json(&["sequence", "--poly", "x^5-x-1", "--count", "3", "--mod", "151"]);
    assert_eq!(v["modulus"]["p"], "151");
    assert_eq!(v["terms"], serde_json::json!(["5", "0", "0"]));
}

#[test]
fn analyze_schema() {
    let v = json(&["analyze", "--poly", "x^5-x-1", "--mode", "sym"]);
    for key in ["polynomial", "field", "discriminant", "mode", "classes", "exclusion", "scan"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["discriminant"], "2869");
    assert_eq!(v["mode"], "sym");
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 6);
    for c in classes {
        for key in ["cycle_type", "value", "factorization", "is_square"] {
            assert!(c.get(key).is_some(), "class missing {key}");
        }
        let f = &c["factorization"];
        assert!(f["sign"].is_i64() && f["factors"].is_array() && f["cofactor"].is_string());
    }
    let b: Vec<&str> =
        v["exclusion"]["prime_support"].as_array().unwrap().iter().map(|p| p["prime"].as_str().unwrap()).collect();
    assert_eq!(b, ["2", "5", "7", "19", "151", "467", "761", "2477"]);
    assert_eq!(v["exclusion"]["cofactor"], "1");
    assert!(v["exclusion"]["value"].is_string());
}

#[test]
fn scan_report() {
    let v = json(&["scan", "--poly", "x^4-x-1", "--limit", "2000"]);
    let s = &v["scan"];
    assert_eq!(s["rational_primes"], 303);
    assert!(s["mismatches"].as_array().unwrap().is_empty());
    let ex: Vec<&str> = s["excluded"].as_array().unwrap().iter().map(|r| r["prime"]["p"].as_str().unwrap()).collect();
    assert!(ex.iter().all(|p| *p == "2" || *p == "283"));
    assert!(s.get("elapsed_ms").is_none());
    let timed = json(&["scan", "--poly", "x^4-x-1", "--limit", "100", "--timing"]);
    assert!(timed["scan"]["elapsed_ms"].is_u64());
}

#[test]
fn output_is_deterministic() {
    let args = ["scan", "--poly", "x^6-x-1", "--limit", "3000", "--seed", "7"];
    let a = splitlaw(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_splitlaw")).args(args).env("SPLITLAW_THREADS", "5").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_over_a_number_field() {
    let v = json(&[
        "check",
        "--field",
        "y^3-y-1",
        "--poly",
        "x^5 + ([2,1,-1])^3*x + [2,1,-1]",
        "--prime",
        "181",
        "--factor",
        "y-30",
    ]);
    assert_eq!(v["t_norm_plus_one"], "57");
    assert_eq!(v["roots"], 3);
    assert_eq!(v["verdict"], "excluded-agrees");
}

#[test]
fn principal_example() {
    let v = json(&["principal", "--field", "y^2+5", "--hcf", "x^2+1", "--limit", "200"]);
    for p in v["primes"].as_array().unwrap() {
        let norm: u64 = p["prime"]["norm"].as_str().unwrap().parse().unwrap();
        match p["principal"].as_bool() {
            Some(b) => assert_eq!(b, norm % 4 == 1, "norm {norm}"),
            None => assert!(norm == 2 || norm == 5, "norm {norm}"),
        }
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| splitlaw(args).status.code();
    assert_eq!(code(&["frobnicate"]), Some(1));
    assert_eq!(code(&["analyze"]), Some(1));
    assert_eq!(code(&["analyze", "--poly", "2*x^3+1"]), Some(1));
    assert_eq!(code(&["analyze", "--poly", "x^9-x-1"]), Some(1));
    assert_eq!(code(&["check", "--poly", "x^3-x-1", "--prime", "91"]), Some(1));
    assert_eq!(code(&["analyze", "--poly", "x^7-x-1", "--max-bits", "64", "--no-factor"]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));

    let out = splitlaw(&["analyze", "--poly", "x^5 + [0,?]"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("position 9"), "{err}");
}

#[test]
fn text_output() {
    let out = splitlaw(&["analyze", "--poly", "x^4-x-1", "--text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("class [1,3]") && s.contains("2^8"), "{s}");
    assert!(s.contains("-2^11·283"), "{s}");
}
