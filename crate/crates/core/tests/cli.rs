use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn lcpow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcpow")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error(out: &Output) -> Value {
    assert!(!out.status.success());
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn k3_limit_is_exact() {
    let v = json(&lcpow(&["k3", "limit"]));
    assert_eq!(v["p"], "56/3");
    assert_eq!(v["q"], "13/3");
    assert_eq!(v["D"], 13);
    assert_eq!(v["irrational"], true);
    assert!(v["decimal"].as_str().unwrap().starts_with("34.2907221936"));
}

#[test]
fn k3_limit_rejects_other_curves() {
    let e = error(&lcpow(&["k3", "limit", "--a", "5", "--e", "10"]));
    assert_eq!(e["error"]["kind"], "unsupported_curve_degree");
}

#[test]
fn k3_sigma_small_table() {
    let v = json(&lcpow(&["k3", "sigma", "--nmax", "4"]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["n"], 1);
    let rec = lcpow(&["k3", "sigma", "--nmax", "12", "--format", "csv"]);
    let dec = lcpow(&["k3", "sigma", "--nmax", "12", "--format", "csv", "--mode", "decomposition"]);
    assert_eq!(rec.stdout, dec.stdout);
}

#[test]
fn k3_check_reports_agreement() {
    let v = json(&lcpow(&["k3", "check", "--nmax", "20"]));
    assert_eq!(v["equal"], true);
}

#[test]
fn length_table_json() {
    let v = json(&lcpow(&["length", "--vars", "x,y", "--ideal", "x^2,x*y", "--nmax", "3"]));
    let lambdas: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["lambda"].as_str().unwrap()).collect();
    assert_eq!(lambdas, ["1", "3", "6"]);
}

#[test]
fn length_table_csv_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lcpow"))
        .args(["length", "--vars", "x,y", "--ideal", "-", "--nmax", "2", "--format", "csv"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"x^2, x*y\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("n,lambda,sigma,tau,e"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn one_variable_is_rejected() {
    let e = error(&lcpow(&["length", "--vars", "x", "--ideal", "x^2", "--nmax", "3"]));
    assert_eq!(e["error"]["kind"], "depth_hypothesis");
    assert!(e["error"]["message"].as_str().unwrap().contains("d >= 2"));
}

#[test]
fn parse_errors_carry_positions() {
    let e = error(&lcpow(&["length", "--vars", "x,y", "--ideal", "x^2, z", "--nmax", "3"]));
    assert_eq!(e["error"]["kind"], "parse");
    assert_eq!(e["error"]["message"], "unknown variable z at position 6");
}

#[test]
fn limit_and_multiplicity() {
    let v = json(&lcpow(&["limit", "--vars", "x,y", "--ideal", "x^2,x*y", "--nmax", "20", "--degree", "2"]));
    assert_eq!(v["extrapolated"], "1/2");
    let v = json(&lcpow(&["mult", "--vars", "x,y", "--ideal", "x^2,x*y,y^2", "--nmax", "12"]));
    assert_eq!(v["multiplicity"], "4/1");
    let e = error(&lcpow(&["mult", "--vars", "x,y", "--ideal", "x", "--nmax", "12"]));
    assert_eq!(e["error"]["kind"], "not_m_primary");
}

#[test]
fn diagonal_series() {
    let v = json(&lcpow(&["diag", "--vars", "x,y,z", "--ideal", "x,y,z", "--a", "2", "--b", "1", "--nmax", "6"]));
    assert_eq!(v["values"].as_array().unwrap().len(), 6);
}
