//! End-to-end runs through argument parsing, the commands, rendering and exit codes.

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use sfink::lambda::{DiscrepancyReport, EndpointSolution, OptimalityReport};
use sfink::{ChainReport, CrossoverResult, NonnegCertificate};

use crate::{dispatch, Exit};

fn sfink(args: &[&str]) -> Exit {
    dispatch(std::iter::once("sfink").chain(args.iter().copied()))
}

fn code(args: &[&str]) -> u8 {
    sfink(args).code
}

fn stdout(args: &[&str]) -> String {
    let out = sfink(args);
    assert_eq!(out.code, 0, "{}", out.stderr);
    out.stdout
}

/// Parses the JSON report as `T` and checks that re-serializing gives the same text.
fn round_trip<T: Serialize + DeserializeOwned>(args: &[&str]) -> T {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let text = stdout(&full);
    let parsed: T = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
    parsed
}

#[test]
fn certify_exit_codes() {
    assert_eq!(code(&["certify", "--beta", "3.876452527"]), 0);
    assert_eq!(
        code(&["certify", "--beta", "b1", "--precision-bits", "256"]),
        0
    );
    assert_eq!(code(&["certify", "--beta", "4.5"]), 1);
    assert_eq!(code(&["certify", "--beta", "-1"]), 2);
    assert_eq!(code(&["certify", "--beta", "seven"]), 2);
    assert_eq!(code(&["certify"]), 2);
}

#[test]
fn failed_certificate_names_the_violation() {
    let out = sfink(&["certify", "--beta", "4.5", "--format", "json"]);
    assert_eq!(out.code, 1);
    let c: NonnegCertificate = serde_json::from_str(&out.stdout).unwrap();
    assert!(!c.verdict);
    let (u, w) = c.violation.unwrap();
    assert_eq!(u, 0.0);
    assert!(w < 0.0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&["chain", "--grid", "1"]), 2);
    assert_eq!(code(&["bench", "--iterations", "0"]), 2);
    assert_eq!(code(&["solve", "--target", "3"]), 2);
    assert_eq!(code(&["lambda", "--order", "6"]), 2);
    assert_eq!(code(&["solve", "--precision-bits", "16"]), 2);
    assert_eq!(code(&["crossover", "--a", "nonsense"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
}

#[test]
fn help_is_not_an_error() {
    let out = sfink(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("certify"));
}

#[test]
fn identical_curves_fail_to_cross() {
    assert_eq!(code(&["crossover", "--a", "zhu", "--b", "zhu"]), 1);
}

#[test]
fn solve_matches_closed_form() {
    let s: EndpointSolution = round_trip(&["solve"]);
    // sqrt2 (4 - pi) / (pi - 2 sqrt2)
    let s2 = std::f64::consts::SQRT_2;
    let pi = std::f64::consts::PI;
    assert!((s.b - s2 * (4.0 - pi) / (pi - 2.0 * s2)).abs() < 1e-14);
    assert!(s.b_decimal.starts_with("3.87645254513397913235"));
    let t: EndpointSolution = round_trip(&["solve", "--target", "1.6"]);
    assert!(t.residual < 1e-35);
}

#[test]
fn crossover_reports_c() {
    let r: CrossoverResult = round_trip(&["crossover"]);
    assert!(r.c_decimal.starts_with("3.87266274"));
    assert!(r.additional_crossings.is_empty());
}

#[test]
fn lambda_fifth_order_at_four() {
    let text = stdout(&["lambda", "--order", "5", "--beta", "4"]);
    assert!(text.contains("-0.041666"), "{text}");
    let all: Vec<DiscrepancyReport> = round_trip(&["lambda", "--beta", "b1"]);
    assert_eq!(all.len(), 6);
    let o: OptimalityReport = round_trip(&["lambda", "--optimality"]);
    assert!(o.lower_counterexample.g_xi > 0.0);
}

#[test]
fn chain_endpoints_and_csv() {
    let r: ChainReport = round_trip(&["chain", "--grid", "2"]);
    assert!(r.verdict);
    let csv = stdout(&[
        "chain",
        "--grid",
        "3",
        "--grid-kind",
        "chebyshev",
        "--format",
        "csv",
    ]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("x,shafer_lower,shafer_sqrt_lower,arcsin,"));
    assert_eq!(lines[0].split(',').count(), 1 + 6 + 5);
    // last row is x = 1: the three upper bounds and arcsin coincide
    assert!(lines[3].ends_with(",0,0,0"), "{}", lines[3]);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["chain", "--grid", "500", "--format", "json"][..],
        &["certify", "--beta", "b1", "--format", "json"],
        &["lambda", "--optimality", "--format", "csv"],
        &["crossover", "--format", "table"],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("sfink-out-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["solve", "--format", "json", "--output", p]), "");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["b"].as_f64().unwrap() > 3.87);
    std::fs::remove_file(path).unwrap();
}

fn bench(args: &[&str]) -> Value {
    let mut full = vec!["bench", "--format", "json"];
    full.extend(args);
    let v: Value = serde_json::from_str(&stdout(&full)).unwrap();
    v
}

#[test]
fn bench_envelopes() {
    let upper = bench(&["--beta", "b1", "--iterations", "100000", "--grid", "10000"]);
    let e = upper["max_abs_error_on_grid"].as_f64().unwrap();
    assert!(e > 0.0 && e < 0.01, "{upper}");
    assert_eq!(upper["side"], "above");

    let lower = bench(&[
        "--spec",
        "shafer-sqrt",
        "--iterations",
        "1000",
        "--grid",
        "1001",
    ]);
    assert!(lower["max_abs_error_on_grid"].as_f64().unwrap() > 0.0);
    assert_eq!(lower["side"], "below");

    let two = bench(&[
        "--family",
        "sqrt",
        "--alpha",
        "zhu",
        "--beta",
        "4",
        "--iterations",
        "10",
    ]);
    assert_eq!(two["side"], "above");
}

#[test]
fn bench_is_deterministic_apart_from_timing() {
    let strip = |mut v: Value| {
        let m = v.as_object_mut().unwrap();
        m.remove("ns_per_eval_bound");
        m.remove("ns_per_eval_reference");
        v
    };
    let args = ["--iterations", "1000", "--grid", "257", "--seed", "9"];
    assert_eq!(strip(bench(&args)), strip(bench(&args)));
}
