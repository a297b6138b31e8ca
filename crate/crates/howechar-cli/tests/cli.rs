use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_howechar")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn theta_at_quarter_turn() {
    let v = json(&["theta", "--pair", "uu", "--n", "1", "--p", "1", "--q", "1", "--nu", "0", "--m", "1", "--theta", "1.5707963,−1.5707963"]);
    let value = &v["results"][0]["value"];
    assert!(value["re"].as_f64().unwrap().abs() < 1e-6);
    assert!((value["im"].as_f64().unwrap() + 0.5).abs() < 1e-6);
    assert_eq!(v["meta"]["pair"], "UU(1,1,1)");
    assert_eq!(v["meta"]["constant"], "1");
}

#[test]
fn identity_is_proved() {
    let v = json(&["identity", "--p", "2", "--q", "1", "--k", "1", "--mode", "grid"]);
    assert_eq!(v["results"][0]["verdict"], "proved");
    let v = json(&["identity", "--p", "2", "--q", "1", "--k", "2", "--mode", "grid"]);
    assert_eq!(v["results"][0]["verdict"], "not in asserted range");
}

#[test]
fn type_c_rank_two_roots() {
    let v = json(&["roots", "--family", "C", "--rank", "2"]);
    assert_eq!(v["results"].as_array().unwrap().len(), 4);
}

#[test]
fn rdv_matches_determinant_oracle() {
    let args = ["--lambda", "2,0,-1", "--random-regular", "3", "--seed", "9"];
    let a = json(&[&["rdv"][..], &args].concat());
    let b = json(&[&["oracle", "hciz"][..], &args].concat());
    for (x, y) in a["results"].as_array().unwrap().iter().zip(b["results"].as_array().unwrap()) {
        assert_eq!(x["point"], y["point"]);
        let d = (x["value"]["re"].as_f64().unwrap() - y["value"]["re"].as_f64().unwrap()).abs()
            + (x["value"]["im"].as_f64().unwrap() - y["value"]["im"].as_f64().unwrap()).abs();
        assert!(d < 1e-10, "{x} vs {y}");
    }
}

#[test]
fn output_is_reproducible() {
    let args = ["oracle", "monte-carlo", "--lambda", "1,0", "--x", "1,-0.5", "--samples", "20000", "--seed", "4"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_howechar")).args(args).env("HOWECHAR_THREADS", "1").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(run(&["theta", "--pair", "uu", "--n", "1", "--nu", "1/3"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    let missing_q = run(&["support", "--pair", "uu", "--n", "1", "--p", "1", "--nu", "0"]);
    assert_eq!(missing_q.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one_with_name() {
    let out = run(&["theta", "--pair", "uu", "--n", "1", "--p", "1", "--q", "1", "--nu", "0", "--m", "1", "--theta", "1,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SingularPoint"));
    let out = run(&["support", "--pair", "uu", "--n", "1", "--p", "1", "--q", "1", "--nu", "1/2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotInCorrespondence"));
}

#[test]
fn quick_verification_passes() {
    let v = json(&["verify", "--quick"]);
    for r in v["results"].as_array().unwrap() {
        assert_eq!(r["passed"], true, "{r}");
    }
}
