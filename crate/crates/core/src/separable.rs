//! Per-copy measurement strategies and their Monte Carlo verification: the
//! two-outcome test for a pure null hypothesis, the fidelity-optimal
//! measurement, likelihood-ratio decisions over i.i.d. outcomes, and a
//! seeded, reproducible simulator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::divergence;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, DEFAULT_RANK_TOL};
use crate::states::{outcome_distribution, DensityMatrix, Povm, PureState};

const LLR_TIE_TOL: f64 = 1e-12;

/// Pure function from an outcome-count vector (and copy count) to the
/// accepted hypothesis.
#[derive(Debug, Clone)]
pub enum DecisionRule {
    /// Accept hypothesis 0 iff the second outcome never occurred.
    AcceptUnlessSecond,
    /// Accept hypothesis 0 iff sum_i counts_i (ln p_i - ln q_i) >= 0.
    /// Ties (zero within 1e-12) accept 0. An observed outcome that is
    /// impossible under one hypothesis decides for the other immediately.
    LogLikelihood { log_ratios: Vec<f64> },
}

impl DecisionRule {
    pub fn decide(&self, counts: &[u64], _n_copies: u32) -> usize {
        match self {
            DecisionRule::AcceptUnlessSecond => {
                if counts.get(1).copied().unwrap_or(0) == 0 {
                    0
                } else {
                    1
                }
            }
            DecisionRule::LogLikelihood { log_ratios } => {
                let mut sum = 0.0;
                let mut impossible_under_0 = false;
                let mut impossible_under_1 = false;
                for (&c, &r) in counts.iter().zip(log_ratios) {
                    if c == 0 {
                        continue;
                    }
                    if r == f64::NEG_INFINITY {
                        impossible_under_0 = true;
                    } else if r == f64::INFINITY {
                        impossible_under_1 = true;
                    } else {
                        sum += c as f64 * r;
                    }
                }
                match (impossible_under_0, impossible_under_1) {
                    (true, false) => 1,
                    (false, true) => 0,
                    // (true, true) cannot arise from sampling either
                    // hypothesis; fall through to the finite part.
                    _ => {
                        if sum >= -LLR_TIE_TOL {
                            0
                        } else {
                            1
                        }
                    }
                }
            }
        }
    }
}

/// A separable independent strategy: one measurement applied to every copy
/// plus a decision rule over the outcome counts.
#[derive(Debug, Clone)]
pub struct Strategy {
    measurement: Povm,
    rule: DecisionRule,
}

impl Strategy {
    pub fn new(measurement: Povm, rule: DecisionRule) -> Self {
        Self { measurement, rule }
    }

    pub fn measurement(&self) -> &Povm {
        &self.measurement
    }

    pub fn rule(&self) -> &DecisionRule {
        &self.rule
    }

    pub fn decide(&self, counts: &[u64], n_copies: u32) -> usize {
        self.rule.decide(counts, n_copies)
    }
}

/// Empirical errors of a simulated strategy. `avg_error` is exactly
/// (err0 + err1) / 2, matching the even prior, and `std_err` is its
/// binomial standard error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub n: u32,
    pub trials: u64,
    pub err0: f64,
    pub err1: f64,
    pub avg_error: f64,
    pub std_err: f64,
    pub seed: u64,
}

/// Two-outcome strategy for a pure null hypothesis: measure
/// {P_psi0, I - P_psi0} and accept psi0 iff the second outcome never occurs.
pub fn pure_strategy(psi0: &PureState) -> Strategy {
    let measurement =
        Povm::complement_pair(psi0.projector()).expect("projector pair resolves the identity");
    Strategy {
        measurement,
        rule: DecisionRule::AcceptUnlessSecond,
    }
}

/// Exact average error of [`pure_strategy`]: <psi0|rho1|psi0>^n / 2. The
/// rule only errs when the true state is rho1 and the second outcome never
/// occurs.
pub fn pure_strategy_error(psi0: &PureState, rho1: &DensityMatrix, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroCopies);
    }
    let overlap = psi0.expectation(rho1.matrix())?.clamp(0.0, 1.0);
    Ok((0.5 * overlap.powi(n as i32)).clamp(0.0, 0.5))
}

/// Support basis columns of rho1 plus the pieces shared by the
/// fidelity-optimal construction.
fn fidelity_optimal_operator(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
) -> Result<(CMatrix, Vec<usize>, linalg::HermitianSpectrum)> {
    let spec1 = linalg::hermitian_eig(rho1.matrix())?;
    let lmax = spec1.eigenvalues().last().copied().unwrap_or(0.0).max(0.0);
    let cutoff = DEFAULT_RANK_TOL * lmax;
    let support: Vec<usize> = (0..spec1.dim())
        .filter(|&j| spec1.eigenvalues()[j] > cutoff)
        .collect();
    let sqrt1 = spec1.apply(|l| if l > cutoff { l.sqrt() } else { 0.0 });
    let pinv_sqrt1 = spec1.apply(|l| if l > cutoff { 1.0 / l.sqrt() } else { 0.0 });
    let inner = &sqrt1 * rho0.matrix() * &sqrt1;
    let inner_spec = linalg::hermitian_eig(&inner)?;
    let inner_cut = 1e-12
        * inner_spec
            .eigenvalues()
            .last()
            .copied()
            .unwrap_or(0.0)
            .max(0.0);
    let inner_sqrt = inner_spec.apply(|l| if l > inner_cut { l.sqrt() } else { 0.0 });
    // The triple product amplifies rounding by the squared inverse root of
    // rho1's smallest support eigenvalue; fold the asymmetry away so the
    // spectral gate does not reject ill-conditioned but valid inputs.
    let m = linalg::hermitize(&(&pinv_sqrt1 * inner_sqrt * &pinv_sqrt1));
    Ok((m, support, spec1))
}

/// The measurement whose induced outcome distributions attain the quantum
/// fidelity: rank-one projectors on the eigenvectors of
/// rho1^(-1/2) sqrt(rho1^(1/2) rho0 rho1^(1/2)) rho1^(-1/2),
/// restricted to the support of rho1. When rho1 is singular, the projector
/// onto its kernel is appended as one extra outcome so the POVM still
/// resolves the identity.
pub fn fidelity_optimal_measurement(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<Povm> {
    if rho0.dim() != rho1.dim() {
        return Err(Error::DimensionMismatch {
            left: rho0.dim(),
            right: rho1.dim(),
        });
    }
    let d = rho0.dim();
    let (m, support, spec1) = fidelity_optimal_operator(rho0, rho1)?;
    let r = support.len();
    if r == d {
        let spec_m = linalg::hermitian_eig(&m)?;
        let outcomes: Vec<CMatrix> = (0..d).map(|k| spec_m.eigenprojector(k)).collect();
        return Povm::new(outcomes);
    }
    let mut vsupp = CMatrix::zeros(d, r);
    for (col, &j) in support.iter().enumerate() {
        vsupp
            .column_mut(col)
            .copy_from(&spec1.eigenvectors().column(j));
    }
    let restricted = vsupp.adjoint() * &m * &vsupp;
    let spec_m = linalg::hermitian_eig(&restricted)?;
    let mut outcomes: Vec<CMatrix> = Vec::with_capacity(r + 1);
    for k in 0..r {
        let w = &vsupp * spec_m.eigenvectors().column(k);
        outcomes.push(&w * w.adjoint());
    }
    outcomes.push(CMatrix::identity(d, d) - &vsupp * vsupp.adjoint());
    Povm::new(outcomes)
}

/// Likelihood-ratio test over the fidelity-optimal measurement's outcome
/// counts.
pub fn likelihood_strategy(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<Strategy> {
    let measurement = fidelity_optimal_measurement(rho0, rho1)?;
    let p = outcome_distribution(&measurement, rho0)?;
    let q = outcome_distribution(&measurement, rho1)?;
    let log_ratios = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(&pi, &qi)| {
            if pi > 0.0 && qi > 0.0 {
                pi.ln() - qi.ln()
            } else if pi > 0.0 {
                f64::INFINITY
            } else if qi > 0.0 {
                f64::NEG_INFINITY
            } else {
                0.0
            }
        })
        .collect();
    Ok(Strategy {
        measurement,
        rule: DecisionRule::LogLikelihood { log_ratios },
    })
}

/// Asymptotic per-copy log-error of the likelihood test on the
/// fidelity-optimal measurement: min over lambda of
/// ln sum_i p_i^lambda q_i^(1-lambda). Never exceeds ln F(rho0, rho1).
pub fn separable_rate(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<f64> {
    let measurement = fidelity_optimal_measurement(rho0, rho1)?;
    let p = outcome_distribution(&measurement, rho0)?;
    let q = outcome_distribution(&measurement, rho1)?;
    Ok(divergence::chernoff_classical(&p, &q)?.log_sum_min)
}

/// Independent per-trial RNG substream, so the trial schedule is
/// reproducible regardless of how trials are distributed over workers.
fn trial_rng(seed: u64, hypothesis: usize, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((hypothesis as u64) << 63) | trial);
    rng
}

fn draw(cdf: &[f64], u: f64) -> usize {
    cdf.iter().position(|&c| u < c).unwrap_or(cdf.len() - 1)
}

/// Runs `trials` independent trials per hypothesis: each trial draws `n`
/// i.i.d. outcomes of the strategy's measurement under the true state and
/// applies the decision rule. Identical inputs and seed give a
/// bit-identical report.
pub fn simulate(
    strategy: &Strategy,
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    n: u32,
    trials: u64,
    seed: u64,
) -> Result<SimReport> {
    if n == 0 {
        return Err(Error::ZeroCopies);
    }
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let dists = [
        outcome_distribution(strategy.measurement(), rho0)?,
        outcome_distribution(strategy.measurement(), rho1)?,
    ];
    let cdfs: Vec<Vec<f64>> = dists
        .iter()
        .map(|dist| {
            let mut acc = 0.0;
            dist.probs()
                .iter()
                .map(|&p| {
                    acc += p;
                    acc
                })
                .collect()
        })
        .collect();
    let k = strategy.measurement().len();
    let mut error_counts = [0u64; 2];
    let mut counts = vec![0u64; k];
    for (hypothesis, cdf) in cdfs.iter().enumerate() {
        for trial in 0..trials {
            let mut rng = trial_rng(seed, hypothesis, trial);
            counts.iter_mut().for_each(|c| *c = 0);
            for _ in 0..n {
                counts[draw(cdf, rng.gen::<f64>())] += 1;
            }
            if strategy.decide(&counts, n) != hypothesis {
                error_counts[hypothesis] += 1;
            }
        }
    }
    let err0 = error_counts[0] as f64 / trials as f64;
    let err1 = error_counts[1] as f64 / trials as f64;
    let t = trials as f64;
    Ok(SimReport {
        n,
        trials,
        err0,
        err1,
        avg_error: 0.5 * err0 + 0.5 * err1,
        std_err: (err0 * (1.0 - err0) / (4.0 * t) + err1 * (1.0 - err1) / (4.0 * t)).sqrt(),
        seed,
    })
}
