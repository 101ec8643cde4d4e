//! End-to-end tests of the `axtight` binary: exit codes, report shape, and
//! the corpus failure path.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_axtight"))
}

fn problems() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/problems"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn member_command_reports_json_and_exit_zero() {
    let file = problems().join("three_lines_f7.prob");
    let output = run(&[
        "member",
        file.to_str().unwrap(),
        "--ideal",
        "I",
        "--element",
        "z2",
    ]);
    // a computed non-membership is still a successful computation
    assert_eq!(output.status.code(), Some(0));
    let json = stdout_json(&output);
    assert_eq!(json["command"], "member");
    assert_eq!(json["verdict"], "NonMember");
    assert_eq!(json["detail"]["member"], false);
}

#[test]
fn tight_command_carries_the_certificate() {
    let file = problems().join("intro_cusp_f5.prob");
    let output = run(&[
        "tight",
        file.to_str().unwrap(),
        "--ideal",
        "I",
        "--element",
        "f",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let json = stdout_json(&output);
    assert_eq!(json["verdict"], "BoundedCertified(c=X, e=1..4)");
    assert_eq!(json["detail"]["certificate"], "X");
    assert_eq!(json["detail"]["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn gb_command_prints_the_basis() {
    let file = problems().join("two_lines_f5.prob");
    let output = run(&["gb", file.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let json = stdout_json(&output);
    assert_eq!(json["detail"]["basis"][0], "X^2 + 4*Z^2");
}

#[test]
fn bracket_command_over_the_rationals_is_an_input_error() {
    let file = problems().join("regular_q.prob");
    let output = run(&[
        "bracket",
        file.to_str().unwrap(),
        "--ideal",
        "cubes",
        "--e",
        "1",
    ]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_one_with_position() {
    let mut tmp = tempfile::NamedTempFile::new().unwrap();
    writeln!(tmp, "field F_7\nvars X\nelement f\n  X^").unwrap();
    let output = run(&["member", tmp.path().to_str().unwrap(), "--ideal", "I", "--element", "f"]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("line 4"), "stderr was: {stderr}");
}

#[test]
fn budget_exhaustion_exits_two() {
    let mut tmp = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        tmp,
        "field F_7\nvars X Y Z\nrelations\n  X^2*Y - Z\nideal I\n  X*Z - Y^2\n  Y^3 - X\nelement f\n  X"
    )
    .unwrap();
    let output = run(&[
        "member",
        tmp.path().to_str().unwrap(),
        "--ideal",
        "I",
        "--element",
        "f",
        "--budget",
        "1",
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn sweep_command_produces_fiber_rows() {
    let file = problems().join("regular_sweep_q.prob");
    let output = run(&[
        "sweep",
        file.to_str().unwrap(),
        "--ideal",
        "cubes",
        "--element",
        "g",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let json = stdout_json(&output);
    assert_eq!(json["verdict"], "ExactNegative");
    assert_eq!(json["detail"]["fibers"].as_array().unwrap().len(), 3);
}

#[test]
fn reduce_command_reports_luckiness() {
    let file = problems().join("fermat_q.prob");
    let output = run(&[
        "reduce",
        file.to_str().unwrap(),
        "--ideal",
        "I",
        "--element",
        "z2",
        "--primes",
        "7,13",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let json = stdout_json(&output);
    assert_eq!(json["verdict"], "Reduced(2 fibers, 2 lucky)");
}

#[test]
fn corpus_filter_runs_a_single_case() {
    let output = run(&["corpus", "--case", "three-lines-reject"]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("CASE three-lines-reject"));
    assert!(stdout.contains("corpus: 1/1 passed"));
}

#[test]
fn corrupted_expectation_fails_naming_the_case() {
    let output = run(&[
        "corpus",
        "--case",
        "three-lines",
        "--corrupt-case",
        "three-lines-reject",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("CASE three-lines-reject"));
    assert!(stdout.contains("FAIL"));
}

#[test]
fn axes_member_needs_an_axes_ring() {
    let file = problems().join("three_lines_f7.prob");
    let output = run(&[
        "axes-member",
        file.to_str().unwrap(),
        "--ideal",
        "I",
        "--element",
        "z2",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("not a canonical axes ring"));
}

#[test]
fn order_flag_is_honored() {
    let mut tmp = tempfile::NamedTempFile::new().unwrap();
    writeln!(tmp, "field Q\nvars X Z\nideal I\n  Z\n  X^2 - Z^2\nelement f\n  X").unwrap();
    let output = run(&[
        "gb",
        tmp.path().to_str().unwrap(),
        "--ideal",
        "I",
        "--order",
        "lex:Z,X",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let json = stdout_json(&output);
    let basis: Vec<String> = json["detail"]["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(basis, vec!["X^2", "Z"]);
}

#[test]
fn auto_primes_generates_congruent_primes() {
    let file = problems().join("fermat_q.prob");
    let output = run(&[
        "sweep",
        file.to_str().unwrap(),
        "--ideal",
        "I",
        "--element",
        "z2",
        "--auto-primes",
        "3,3",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let json = stdout_json(&output);
    let primes: Vec<u64> = json["detail"]["fibers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["p"].as_u64().unwrap())
        .collect();
    assert_eq!(primes, vec![7, 13, 19]);
}
