use std::process::{Command, Output};

use serde_json::Value;

fn rankexact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankexact")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

/// Drops the fields that depend on the wall clock.
fn without_clock(mut doc: Value) -> Value {
    doc["manifest"].as_object_mut().unwrap().remove("timestamp");
    if let Some(result) = doc["result"].as_object_mut() {
        result.remove("elapsed_ms");
    }
    doc
}

#[test]
fn exact_vanishing_coefficient() {
    let out = rankexact(&["exact", "1", "5", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let result = &doc["result"];
    assert_eq!(result["nearest_integer"], "0");
    let re: f64 = result["value"]["re"].as_str().unwrap().parse().unwrap();
    assert!(re.abs() < 1e-60);
    assert_eq!(result["precision_bits"], 256);
    assert_eq!(doc["manifest"]["command"], "exact");
    assert_eq!(doc["manifest"]["params"]["p"], 5);
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["exact", "1", "5", "4", "--cmax", "5", "--json"];
    let first = rankexact(&args);
    let second = rankexact(&args);
    let a = serde_json::to_vec(&without_clock(json(&first))).unwrap();
    let b = serde_json::to_vec(&without_clock(json(&second))).unwrap();
    assert_eq!(a, b);
}

#[test]
fn dyson_five_four() {
    let out = rankexact(&["dyson", "5-4", "104"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["result"]["pass"], true);
    let checks = doc["result"]["combinatorial"]["checks"].as_array().unwrap();
    let args: Vec<u64> = checks.iter().map(|c| c["n"].as_u64().unwrap()).collect();
    assert_eq!(args, (4..=104).step_by(5).collect::<Vec<_>>());
}

#[test]
fn partition_numbers_through_rademacher() {
    let doc = json(&rankexact(&["exact", "0", "1", "100"]));
    assert_eq!(doc["result"]["nearest_integer"], "190569292");
    assert_eq!(doc["result"]["status"], "converged");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(rankexact(&["exact", "1", "5"]).status.code(), Some(2));
    assert_eq!(rankexact(&["frobnicate"]).status.code(), Some(2));
    let out = rankexact(&["vanishing", "7-9", "0", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(rankexact(&["--precision", "16", "coeff", "1", "5", "4"]).status.code(), Some(2));
}

#[test]
fn failed_check_exits_one() {
    let out = rankexact(&["bridge-check", "5", "--c-multiples", "1", "--a-max", "4", "--tolerance", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["pass"], false);
}

#[test]
fn vanishing_passes() {
    let out = rankexact(&["vanishing", "7-3.1", "2", "14"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["pass"], true);
}

#[test]
fn csv_carries_manifest() {
    let out = rankexact(&["rank-table", "6", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let manifest: Value = serde_json::from_str(lines.next().unwrap().trim_start_matches("# ")).unwrap();
    assert_eq!(manifest["precision_bits"], 256);
    assert_eq!(lines.next(), Some("n,m,count"));
    let total: i64 = lines.filter(|l| l.starts_with("6,")).map(|l| l.rsplit(',').next().unwrap().parse::<i64>().unwrap()).sum();
    assert_eq!(total, 11);
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("rankexact-cli-{}.json", std::process::id()));
    let out = rankexact(&["coeff", "1", "3", "10", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(doc["result"]["target"], "A(1/3; 10)");
}

#[test]
fn selftest_module_subset() {
    let out = rankexact(&["selftest", "quick", "--modules", "core-arith,rank-geometry", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["result"]["seed"], 3);
    assert!(doc["result"]["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}
