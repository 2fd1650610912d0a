//! Quantum binary hypothesis testing: exact errors, analytic bounds, and
//! asymptotic rates under joint and separable measurements, with a seeded
//! Monte Carlo simulator for measurement strategies.
//!
//! # Quick start
//!
//! ```
//! use qhtest::joint::error_bounds;
//! use qhtest::separable::{likelihood_strategy, simulate};
//! use qhtest::states::pauli_pair;
//!
//! // Two qubit hypotheses with Bloch vectors of length 0.8 at right angles.
//! let (rho0, rho1) = pauli_pair(0.8, 0.8, std::f64::consts::FRAC_PI_2)?;
//!
//! // Exact minimal error and fidelity bounds for a sample of three copies
//! // measured jointly.
//! let report = error_bounds(&rho0, &rho1, 3, qhtest::DEFAULT_DIM_CAP)?;
//! let exact = report.exact_error.unwrap();
//! assert!(report.lower_fid <= exact && exact <= report.upper_fid);
//!
//! // A separable per-copy strategy, simulated with a fixed seed.
//! let strategy = likelihood_strategy(&rho0, &rho1)?;
//! let sim = simulate(&strategy, &rho0, &rho1, 3, 10_000, 7)?;
//! assert!(sim.avg_error >= exact - 4.0 * sim.std_err);
//! # Ok::<(), qhtest::Error>(())
//! ```

pub mod divergence;
pub mod error;
pub mod joint;
pub mod linalg;
pub mod separable;
pub mod states;

pub use error::{Error, Result};

/// Largest Hilbert-space dimension accepted by tensor-power routines.
pub const DEFAULT_DIM_CAP: usize = 4096;
/// Largest moment order accepted by the moment expansion (2^order terms).
pub const DEFAULT_MOMENT_CAP: u32 = 12;
/// Largest composition count accepted by the exact multinomial error.
pub const DEFAULT_COMPOSITION_CAP: u64 = 1_000_000;
