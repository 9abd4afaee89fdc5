//! End-to-end tests for the `riordan` binary.
//!
//! The golden files under `tests/golden/` were frozen from known-good runs and
//! are compared byte-for-byte: stdout must be reproducible exactly, with no
//! platform- or run-dependent variation.

use std::process::{Command, Output};

use riordan::array::RiordanArray;
use riordan::expr::parse_eval;
use riordan::rational::render;

const FIXTURE_DB: &str = concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/tests/fixtures/oeis_stripped_sample.txt"
);

/// Run the binary with the given arguments and a scrubbed environment.
fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riordan"))
        .args(args)
        .env_remove("RIORDAN_OEIS_PATH")
        .output()
        .expect("failed to spawn riordan binary")
}

fn stdout_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("stdout is not UTF-8")
}

fn stderr_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stderr).expect("stderr is not UTF-8")
}

/// Assert a clean run (exit 0, nothing on stderr) and return stdout.
fn run_clean(args: &[&str]) -> String {
    let output = run(args);
    assert_eq!(
        output.status.code(),
        Some(0),
        "args {:?}: stderr = {}",
        args,
        stderr_of(&output)
    );
    assert_eq!(stderr_of(&output), "", "args {:?}", args);
    stdout_of(&output).to_owned()
}

#[test]
fn golden_expand_pascal_text() {
    let out = run_clean(&["expand", "-g", "1/(1-x)", "-f", "x/(1-x)", "--rows", "5"]);
    assert_eq!(out, include_str!("golden/expand_pascal.txt"));
}

#[test]
fn golden_half_vertical_running_example() {
    let out = run_clean(&[
        "half",
        "--vertical",
        "-g",
        "1/(1-x)",
        "-f",
        "x*(1+x)/(1-x)",
        "--rows",
        "5",
    ]);
    assert_eq!(out, include_str!("golden/half_vertical_running.txt"));
}

#[test]
fn golden_antecedent_horizontal_pascal() {
    let out = run_clean(&[
        "antecedent",
        "--horizontal",
        "-psi",
        "1/(1-x)",
        "-phi",
        "x/(1-x)",
        "--rows",
        "5",
    ]);
    assert_eq!(out, include_str!("golden/antecedent_horizontal_pascal.txt"));
}

#[test]
fn golden_factor_running_example() {
    let out = run_clean(&[
        "factor",
        "-g",
        "1/(1-x)",
        "-f",
        "x*(1+x)/(1-x)",
        "-N",
        "10",
    ]);
    assert_eq!(out, include_str!("golden/factor_running.txt"));
}

#[test]
fn golden_expand_pascal_json() {
    let out = run_clean(&[
        "expand", "-g", "1/(1-x)", "-f", "x/(1-x)", "--rows", "5", "--format", "json",
    ]);
    assert_eq!(out, include_str!("golden/expand_pascal.json"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = &[
        "factor",
        "-g",
        "1/(1-x)",
        "-f",
        "x*(1+x)/(1-x)",
        "-N",
        "12",
    ];
    let first = run(args);
    let second = run(args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stderr, second.stderr);
}

#[test]
fn json_output_round_trips_to_library_values() {
    let out = run_clean(&[
        "expand", "-g", "1/(1-x)", "-f", "x/(1-x)", "--rows", "6", "--format", "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&out).expect("stdout is not valid JSON");

    // Every coefficient must be a JSON string: floats are never emitted.
    let g = doc["g"].as_array().expect("g is an array");
    let f = doc["f"].as_array().expect("f is an array");
    assert!(g.iter().all(serde_json::Value::is_string));
    assert!(f.iter().all(serde_json::Value::is_string));

    let g_series = parse_eval("1/(1-x)", 16).unwrap();
    let f_series = parse_eval("x/(1-x)", 16).unwrap();
    let expected_g: Vec<String> = g_series.coeffs().iter().map(render).collect();
    let expected_f: Vec<String> = f_series.coeffs().iter().map(render).collect();
    let got_g: Vec<&str> = g.iter().map(|v| v.as_str().unwrap()).collect();
    let got_f: Vec<&str> = f.iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(got_g, expected_g);
    assert_eq!(got_f, expected_f);

    let matrix = RiordanArray::new(g_series, f_series)
        .unwrap()
        .expand(6)
        .unwrap();
    let got_rows: Vec<Vec<&str>> = doc["matrix"]
        .as_array()
        .expect("matrix is an array")
        .iter()
        .map(|row| {
            row.as_array()
                .expect("matrix row is an array")
                .iter()
                .map(|v| v.as_str().expect("matrix entry is a string"))
                .collect()
        })
        .collect();
    let expected_rows: Vec<Vec<String>> = matrix
        .rows()
        .iter()
        .map(|row| row.iter().map(render).collect())
        .collect();
    assert_eq!(got_rows, expected_rows);
}

#[test]
fn csv_matrix_matches_plain_triangle() {
    let out = run_clean(&[
        "expand", "-g", "1/(1-x)", "-f", "x/(1-x)", "--rows", "3", "--format", "csv",
    ]);
    assert_eq!(out, "1\n1,1\n1,2,1\n");
}

#[test]
fn no_arguments_prints_usage_and_fails() {
    let output = run(&[]);
    assert_eq!(output.status.code(), Some(2));
    assert_eq!(stdout_of(&output), "");
    assert!(stderr_of(&output).contains("usage"));
}

#[test]
fn syntax_error_exits_2() {
    let output = run(&["expand", "-g", "1/(1-x", "-f", "x", "--rows", "3"]);
    assert_eq!(output.status.code(), Some(2));
    assert_eq!(stdout_of(&output), "");
    let err = stderr_of(&output);
    assert!(err.starts_with("error: "), "stderr = {err}");
    assert!(err.contains("syntax error"), "stderr = {err}");
}

#[test]
fn unknown_flag_exits_2() {
    let output = run(&["expand", "-g", "1", "-f", "x", "--bogus", "3"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("unknown flag"));
}

#[test]
fn math_error_exits_3() {
    let output = run(&["expand", "-g", "1/x", "-f", "x", "--rows", "3"]);
    assert_eq!(output.status.code(), Some(3));
    assert_eq!(stdout_of(&output), "");
    assert!(stderr_of(&output).starts_with("error: "));
}

#[test]
fn precision_raise_notice_goes_to_stderr_only() {
    let output = run(&["hankel", "-expr", "catalan(x)", "--nmax", "9"]);
    assert_eq!(output.status.code(), Some(0));
    let err = stderr_of(&output);
    assert!(err.starts_with("notice: raising precision"), "stderr = {err}");
    // stdout itself is unaffected by the notice: same bytes as an explicit run.
    let explicit = run_clean(&[
        "hankel",
        "-expr",
        "catalan(x)",
        "--nmax",
        "9",
        "--precision",
        "19",
    ]);
    assert_eq!(stdout_of(&output), explicit);
    // The Catalan Hankel transform is identically 1.
    assert!(stdout_of(&output).contains("h: 1, 1, 1, 1, 1, 1, 1, 1, 1, 1\n"));
}

#[test]
fn identify_reads_db_from_flag() {
    let out = run_clean(&[
        "identify",
        "-expr",
        "1/sqrt(1-6*x+x^2)",
        "--oeis-db",
        FIXTURE_DB,
    ]);
    assert!(out.contains("A001850 offset 0"), "stdout = {out}");
}

#[test]
fn identify_reads_db_from_environment() {
    let output = Command::new(env!("CARGO_BIN_EXE_riordan"))
        .args([
            "identify",
            "-g",
            "1/(1-x)",
            "-f",
            "x*(1+x)/(1-x)",
            "--column",
            "0",
        ])
        .env("RIORDAN_OEIS_PATH", FIXTURE_DB)
        .output()
        .expect("failed to spawn riordan binary");
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    assert!(stdout_of(&output).contains("A000012 offset 0"));
}

#[test]
fn identify_without_db_exits_2() {
    let output = run(&["identify", "-expr", "1/(1-x)"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("RIORDAN_OEIS_PATH"));
}

#[test]
fn identify_reports_no_match() {
    let out = run_clean(&["identify", "-expr", "1+x^7", "--oeis-db", FIXTURE_DB]);
    assert!(out.contains("no matches"), "stdout = {out}");
}

#[test]
fn verify_passes_and_exits_0() {
    let output = run(&["verify"]);
    assert_eq!(output.status.code(), Some(0), "{}", stdout_of(&output));
    let out = stdout_of(&output);
    assert!(out.contains("0 failed"), "stdout = {out}");
    assert!(!out.contains("FAIL"), "stdout = {out}");
}
