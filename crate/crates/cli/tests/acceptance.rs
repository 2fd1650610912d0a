//! Acceptance criterion for the command-line surface: repeated sweeps with
//! identical flags and seed must produce byte-identical CSV.

use std::process::Command;
use std::time::Instant;

use qhtest::states::pauli_pair;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qhtest"))
}

#[test]
fn criterion_10_sweep_is_byte_stable() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let (rho0, rho1) = pauli_pair(0.8, 0.8, std::f64::consts::FRAC_PI_2).unwrap();
    let rho0_path = dir.path().join("rho0.json");
    let rho1_path = dir.path().join("rho1.json");
    std::fs::write(&rho0_path, rho0.to_state_json()).unwrap();
    std::fs::write(&rho1_path, rho1.to_state_json()).unwrap();

    let run = |out: &std::path::Path| {
        let status = bin()
            .args([
                "sweep",
                "--rho0",
                rho0_path.to_str().unwrap(),
                "--rho1",
                rho1_path.to_str().unwrap(),
                "--n-max",
                "6",
                "--trials",
                "2000",
                "--seed",
                "42",
                "--out",
                out.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success(), "sweep failed: {status:?}");
        std::fs::read(out).unwrap()
    };

    let first = run(&dir.path().join("first.csv"));
    let second = run(&dir.path().join("second.csv"));
    assert_eq!(first, second, "sweep output differs between identical runs");
    assert!(!first.is_empty());

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "runtime {elapsed:?} >= 10 s");
    println!(
        "criterion 10 sweep determinism: PASS ({} identical bytes across two runs, {elapsed:?})",
        first.len()
    );
}
