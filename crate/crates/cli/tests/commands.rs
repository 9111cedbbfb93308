use std::process::Command;

use fusion_mult_cli::{run_cli, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION};
use serde_json::Value;

const TLJ5: &str = r#"{"kind":"tlj_ainf","lambda_inv":5}"#;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fusion-mult").chain(args.iter().copied());
    let code = run_cli(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn envelope_fields() {
    let v = json(&["ring", "describe", "--ring", TLJ5]);
    for key in ["command", "inputs", "result", "witnesses", "tolerances", "versions"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "ring describe");
    assert_eq!(v["versions"]["schema"], 1);
}

#[test]
fn admissible_rejects_outside_point() {
    let v = json(&["tlj", "admissible", "--lambda-inv", "5", "--t", "5.5", "--level", "8"]);
    let verdict = &v["result"]["verdict"];
    assert_eq!(verdict["verdict"], "rejected");
    assert_eq!(verdict["level"], 0);
    assert_eq!(verdict["matrix"], "localizing");
    assert_eq!(verdict["eigenvalue"].as_f64(), Some(-0.5));
    assert_eq!(v["witnesses"][0]["eigenvalue"].as_f64(), Some(-0.5));

    let v = json(&["tlj", "admissible", "--lambda-inv", "5", "--t", "4.7", "--level", "12"]);
    assert_eq!(v["result"]["verdict"]["verdict"], "admissible");
    let v = json(&["tlj", "admissible", "--lambda-inv", "5", "--t", "-0.5", "--float"]);
    assert_eq!(v["result"]["verdict"]["matrix"], "shifted");
}

#[test]
fn admissible_from_measure_spec() {
    let mult = r#"{"kind":"measure","atoms":[[0,0.5],[5,0.5]]}"#;
    let v = json(&["tlj", "admissible", "--lambda-inv", "5", "--mult", mult]);
    assert_eq!(v["result"]["verdict"]["verdict"], "admissible");
}

#[test]
fn plancherel_orthogonality() {
    let v = json(&["tlj", "plancherel", "--n", "3", "--m", "0"]);
    assert!(v["result"]["value"].as_f64().unwrap().abs() < 1e-8);
    let v = json(&["tlj", "plancherel", "--n", "2", "--m", "2"]);
    assert!((v["result"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn plancherel_without_convergence_is_numeric_error() {
    let (code, _, err) = run(&["tlj", "plancherel", "--n", "30", "--m", "30", "--initial-nodes", "2", "--max-doublings", "0"]);
    assert_eq!(code, EXIT_NUMERIC, "{err}");
    let e: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(e["error"]["kind"], "numeric");
}

#[test]
fn spectral_norm_approaches_four() {
    let v = json(&["spectral", "norm", "--ring", TLJ5, "--generator", "X", "--truncation", "500"]);
    let estimate = v["result"]["estimate"].as_f64().unwrap();
    assert!((estimate - 4.0).abs() < 1e-3, "{estimate}");
}

#[test]
fn amenability_verdicts() {
    let v = json(&["spectral", "amenability", "--ring", TLJ5, "--generator", "X", "--truncation", "50"]);
    assert_eq!(v["result"]["verdict"], "gap_detected");
    let v = json(&["spectral", "amenability", "--ring", r#"{"kind":"tlj_finite","m":7}"#, "--generator", "H1"]);
    assert_eq!(v["result"]["verdict"], "amenable_within_tol");
    assert_eq!(v["result"]["source"], "finite_eigensolve");
}

#[test]
fn fuse_and_convolve() {
    let v = json(&["ring", "fuse", "--ring", TLJ5, "--a", "H2", "--b", "H3"]);
    let text = v["result"].to_string();
    for n in 1..=5 {
        assert!(text.contains(&format!("\"H{n}\"")), "{text}");
    }
    let z = r#"{"kind":"group","family":"integers","params":{"rank":1}}"#;
    let mult = r#"{"kind":"table","values":[["0",1],["2",0.25],["-2",0.25]],"default":0}"#;
    let (code, out, err) = run(&[
        "mult", "convolve", "--ring", z, "--mult", mult, "--x", "2", "--y", "0", "--labels", "-4;-2;0", "--format", "csv",
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let (_, rows) = csv_rows(&out);
    let re: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    // φ_{x,ε}(k) = φ(k + 2)
    assert_eq!(re, vec![0.25, 1.0, 0.25]);
}

#[test]
fn l1_range_reports_first_violation() {
    let v = json(&["tlj", "l1range", "--lambda-inv", "5", "--t", "-1.2"]);
    assert_eq!(v["result"]["outcome"]["status"], "violation");
    assert_eq!(v["result"]["outcome"]["n"], 10);
    assert_eq!(v["witnesses"][0]["n"], 10);
    let v = json(&["tlj", "l1range", "--lambda-inv", "5", "--t", "-1"]);
    assert_eq!(v["result"]["outcome"]["status"], "ok");
}

#[test]
fn norms_of_basis_element() {
    let v = json(&["tlj", "norms", "--lambda-inv", "5", "--element", "H2"]);
    assert_eq!(v["result"]["universal_norm"]["exact_value"], "11");
    assert_eq!(v["result"]["reduced_norm"]["exact_value"], "5");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(run(&["tlj", "admissible", "--lambda-inv", "5"]).0, EXIT_USAGE);
    assert_eq!(run(&["tlj", "admissible", "--lambda-inv", "3", "--t", "1"]).0, EXIT_VALIDATION);
    let (code, _, err) = run(&["ring", "describe", "--ring", r#"{"kind":"tlj_ainf","lambda_inv":5,"x":1}"#]);
    assert_eq!(code, EXIT_VALIDATION);
    let e: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(e["error"]["kind"], "schema");
    assert_eq!(run(&["ring", "describe", "--ring", "/no/such/file.json"]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
    assert_eq!(run(&["--version"]).0, EXIT_OK);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_fusion-mult");
    let ok = Command::new(bin).args(["tlj", "plancherel", "--n", "1", "--m", "0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin).args(["tlj", "admissible", "--lambda-inv", "2", "--t", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_VALIDATION));
    let usage = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
}

#[test]
fn outputs_are_byte_stable() {
    let cases: [&[&str]; 4] = [
        &["tlj", "admissible", "--lambda-inv", "5", "--t", "4.7", "--float"],
        &["tlj", "moments", "--lambda-inv", "9/2", "--t", "3", "--format", "csv"],
        &["spectral", "norm", "--ring", TLJ5, "--generator", "X", "--truncation", "64"],
        &["ring", "dims", "--ring", r#"{"kind":"su_n","n":3,"q":0.9}"#, "--level", "3"],
    ];
    for args in cases {
        let first = run(args);
        let second = run(args);
        assert_eq!(first.0, EXIT_OK, "{args:?}: {}", first.2);
        assert_eq!(first.1, second.1);
    }
}

#[test]
fn csv_contracts() {
    let (_, out, _) = run(&["ring", "dims", "--ring", TLJ5, "--level", "4", "--format", "csv"]);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["label", "level", "dimension", "exact"]);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4][3], "76");

    let (_, out, _) = run(&["tlj", "moments", "--lambda-inv", "5", "--mult", r#"{"kind":"regular"}"#, "--count", "10", "--format", "csv"]);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["k", "moment", "exact", "dimension", "phi"]);
    assert_eq!(rows.len(), 11);
    let catalan = ["1", "1", "2", "5", "14", "42", "132", "429", "1430", "4862", "16796"];
    let exact: Vec<&str> = rows.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(exact, catalan);

    let (_, out, _) = run(&["spectral", "norm", "--ring", TLJ5, "--generator", "X", "--truncation", "40", "--format", "csv"]);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["size", "estimate"]);
    let sizes: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(sizes, ["10", "20", "40"]);

    let (_, out, _) = run(&["mult", "eval", "--ring", TLJ5, "--mult", r#"{"kind":"point","t":2}"#, "--level", "2", "--format", "csv"]);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["label", "dimension", "re", "im"]);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1][2].parse::<f64>().unwrap(), 0.25);
}

#[test]
fn ring_from_file_matches_inline() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tlj5.json");
    std::fs::write(&path, TLJ5).unwrap();
    let from_file = run(&["spectral", "norm", "--ring", path.to_str().unwrap(), "--generator", "X", "--truncation", "500"]);
    let inline = run(&["spectral", "norm", "--ring", TLJ5, "--generator", "X", "--truncation", "500"]);
    assert_eq!(from_file.0, EXIT_OK, "{}", from_file.2);
    assert_eq!(from_file.1, inline.1);
    let v: Value = serde_json::from_str(&from_file.1).unwrap();
    assert!((v["result"]["estimate"].as_f64().unwrap() - 4.0).abs() < 1e-3);
}
