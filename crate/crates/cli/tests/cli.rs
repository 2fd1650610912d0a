//! End-to-end checks of the command-line surface: exit codes, report
//! rendering, and sweep content.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qhtest::joint::pure_joint_error;
use qhtest::states::{pauli_pair, CVector, PureState};
use qhtest::linalg::C64;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qhtest"))
}

fn write_pauli_pair(dir: &Path) -> (PathBuf, PathBuf) {
    let (rho0, rho1) = pauli_pair(0.8, 0.8, std::f64::consts::FRAC_PI_2).unwrap();
    let p0 = dir.join("rho0.json");
    let p1 = dir.join("rho1.json");
    std::fs::write(&p0, rho0.to_state_json()).unwrap();
    std::fs::write(&p1, rho1.to_state_json()).unwrap();
    (p0, p1)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

#[test]
fn bounds_reports_the_single_copy_error() {
    let dir = tempfile::tempdir().unwrap();
    let (p0, p1) = write_pauli_pair(dir.path());
    let out = run(&["bounds", "--rho0", p0.to_str().unwrap(), "--rho1", p1.to_str().unwrap(), "--n", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // (1 - 0.4 sqrt(2)) / 2
    let expect = 0.5 * (1.0 - 0.4 * 2.0f64.sqrt());
    let line = text.lines().find(|l| l.starts_with("exact_error")).unwrap();
    let value: f64 = line.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((value - expect).abs() <= 1e-10, "{value} vs {expect}");
    assert!(text.contains("nats/copy"));
}

#[test]
fn bounds_json_mirrors_report_fields() {
    let dir = tempfile::tempdir().unwrap();
    let (p0, p1) = write_pauli_pair(dir.path());
    let out = run(&[
        "bounds", "--rho0", p0.to_str().unwrap(), "--rho1", p1.to_str().unwrap(),
        "--n", "2", "--json", "--bits",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["n"], 2);
    assert_eq!(value["units"], "bits");
    for key in ["exact_error", "lower_fid", "upper_fid", "rate_lower_fid", "rate_upper_fid", "rate_lower_relent"] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
    let exact = value["exact_error"].as_f64().unwrap();
    assert!(exact > 0.0 && exact < 0.5);
}

#[test]
fn missing_state_file_exits_2() {
    let out = run(&["bounds", "--rho0", "/nonexistent/a.json", "--rho1", "/nonexistent/b.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("error"));
}

#[test]
fn invalid_state_file_exits_1_and_names_the_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    // trace 2 violates the unit-trace invariant
    std::fs::write(
        &bad,
        r#"{"dim": 2, "re": [[1.0, 0.0], [0.0, 1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#,
    )
    .unwrap();
    let out = run(&["bounds", "--rho0", bad.to_str().unwrap(), "--rho1", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("trace"));
}

#[test]
fn malformed_json_exits_1_with_line_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("syntax.json");
    std::fs::write(&bad, "{\n \"dim\": 2,\n oops\n}").unwrap();
    let out = run(&["bounds", "--rho0", bad.to_str().unwrap(), "--rho1", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line"));
}

#[test]
fn unknown_flag_exits_1_and_help_exits_0() {
    let out = run(&["bounds", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8(help.stdout).unwrap().contains("sweep"));
}

#[test]
fn unwritable_output_path_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let (p0, p1) = write_pauli_pair(dir.path());
    let out = run(&[
        "sweep", "--rho0", p0.to_str().unwrap(), "--rho1", p1.to_str().unwrap(),
        "--n-max", "2", "--out", "/nonexistent/dir/table.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn example_pauli_with_zero_bloch_vectors_reports_half() {
    let out = run(&["example", "pauli", "--a", "0", "--b", "0", "--theta", "0", "--n", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("exact_error:       5.00000000000e-1"), "{text}");
}

#[test]
fn example_pauli_rejects_out_of_range_parameters() {
    let out = run(&["example", "pauli", "--a", "1.5", "--b", "0", "--theta", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("Bloch"));
}

#[test]
fn example_entangle_prints_analytic_simulated_and_locality_note() {
    let out = run(&["example", "entangle", "--n", "3", "--trials", "20000", "--seed", "11"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("analytic error:   6.25000000000e-2"), "{text}");
    assert!(text.contains("simulated error:"));
    assert!(text.contains("single-particle marginals"));
    assert!(text.contains("upper_pure:        6.25000000000e-2"));
}

#[test]
fn example_sweep_of_pure_pair_matches_closed_form_per_row() {
    // Overlap^2 = 1/2 pure pair loaded through state files.
    let dir = tempfile::tempdir().unwrap();
    let psi0 = PureState::basis_state(2, 0);
    let psi1 = PureState::normalized(CVector::from_vec(vec![
        C64::new(1.0, 0.0),
        C64::new(1.0, 0.0),
    ]))
    .unwrap();
    let p0 = dir.path().join("psi0.json");
    let p1 = dir.path().join("psi1.json");
    std::fs::write(&p0, psi0.to_density().to_state_json()).unwrap();
    std::fs::write(&p1, psi1.to_density().to_state_json()).unwrap();
    let table = dir.path().join("table.csv");
    let out = run(&[
        "sweep", "--rho0", p0.to_str().unwrap(), "--rho1", p1.to_str().unwrap(),
        "--n-max", "6", "--out", table.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&table).unwrap();
    let mut rows = 0;
    for (i, line) in csv.lines().skip(1).enumerate() {
        let n = (i + 1) as u32;
        let exact: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        let closed = pure_joint_error(&psi0, &psi1, n).unwrap();
        assert!((exact - closed).abs() <= 1e-9, "row {n}: {exact} vs {closed}");
        rows += 1;
    }
    assert_eq!(rows, 6);
}
