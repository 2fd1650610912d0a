//! Joint measurements of the whole sample: the optimal two-state test, its
//! exact tensor-power error, closed forms for pure and commuting states,
//! fidelity and relative-entropy bounds, the moment expansion of the
//! spectral distribution, and the exact multinomial error of classical
//! repeated sampling.

use num_complex::Complex;
use serde::Serialize;

use crate::divergence;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64};
use crate::states::{DensityMatrix, Povm, ProbVector, PureState};

/// Eigenvalues of rho0 - rho1 this close to zero are treated as ties and
/// assigned to hypothesis 1, which keeps the test deterministic without
/// changing the error under the even prior.
const ZERO_EIG_TOL: f64 = 1e-12;
/// Frobenius threshold below which a commutator counts as zero.
const COMMUTE_TOL: f64 = 1e-10;
/// Rank-one detection threshold for the pure-state upper bound.
const PURE_RANK_TOL: f64 = 1e-9;
/// Eigenvalues of rho0 closer than this are treated as one degenerate
/// cluster during simultaneous diagonalization.
const CLUSTER_TOL: f64 = 1e-8;

/// The optimal two-state discrimination test: measure in the eigenbasis of
/// rho0 - rho1 and accept hypothesis 0 exactly on the outcomes with a
/// positive eigenvalue.
#[derive(Debug, Clone)]
pub struct HelstromTest {
    measurement: Povm,
    accept0_mask: Vec<bool>,
}

impl HelstromTest {
    pub fn measurement(&self) -> &Povm {
        &self.measurement
    }

    pub fn accept0_mask(&self) -> &[bool] {
        &self.accept0_mask
    }

    /// Hypothesis chosen when `outcome` is observed.
    pub fn decide(&self, outcome: usize) -> usize {
        if self.accept0_mask[outcome] {
            0
        } else {
            1
        }
    }
}

/// Exact error (when the tensor-power dimension is tractable), fidelity
/// bound interval, and asymptotic per-copy rates, all for sample size `n`.
/// Errors live in [0, 1/2]; rates are nats per copy.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub n: u32,
    pub exact_error: Option<f64>,
    pub lower_fid: f64,
    pub upper_fid: f64,
    pub upper_pure: Option<f64>,
    pub rate_lower_fid: f64,
    pub rate_upper_fid: f64,
    pub rate_lower_relent: f64,
}

fn ensure_same_dim(a: &DensityMatrix, b: &DensityMatrix) -> Result<()> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        })
    }
}

/// Builds the optimal test from the spectral decomposition of rho0 - rho1.
pub fn helstrom_test(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<HelstromTest> {
    ensure_same_dim(rho0, rho1)?;
    let spec = linalg::hermitian_eig(&(rho0.matrix() - rho1.matrix()))?;
    let outcomes: Vec<CMatrix> = (0..spec.dim()).map(|k| spec.eigenprojector(k)).collect();
    let accept0_mask: Vec<bool> = spec.eigenvalues().iter().map(|&l| l > ZERO_EIG_TOL).collect();
    Ok(HelstromTest {
        measurement: Povm::new(outcomes)?,
        accept0_mask,
    })
}

/// Minimal average error for a single copy under the even prior:
/// (1 - ||rho0 - rho1||_1 / 2) / 2.
pub fn helstrom_error(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<f64> {
    ensure_same_dim(rho0, rho1)?;
    let tn = linalg::trace_norm(&(rho0.matrix() - rho1.matrix()))?;
    Ok((0.5 * (1.0 - 0.5 * tn)).clamp(0.0, 0.5))
}

/// Minimal average error for `n` copies measured jointly, via the trace
/// norm of the difference of tensor powers. Needs dim^n <= cap.
pub fn joint_error_exact(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    n: u32,
    cap: usize,
) -> Result<f64> {
    ensure_same_dim(rho0, rho1)?;
    let t0 = linalg::tensor_power(rho0.matrix(), n, cap)?;
    let t1 = linalg::tensor_power(rho1.matrix(), n, cap)?;
    let tn = linalg::trace_norm(&(t0 - t1))?;
    Ok((0.5 * (1.0 - 0.5 * tn)).clamp(0.0, 0.5))
}

/// Closed form for two pure states: (1 - sqrt(1 - |<psi0|psi1>|^(2n))) / 2.
pub fn pure_joint_error(psi0: &PureState, psi1: &PureState, n: u32) -> Result<f64> {
    if psi0.dim() != psi1.dim() {
        return Err(Error::DimensionMismatch {
            left: psi0.dim(),
            right: psi1.dim(),
        });
    }
    if n == 0 {
        return Err(Error::ZeroCopies);
    }
    let mut overlap_sq = psi0.overlap(psi1).norm_sqr().clamp(0.0, 1.0);
    if overlap_sq >= 1.0 - 1e-14 {
        // Indistinguishable at f64 precision; the sqrt would otherwise
        // amplify the rounding in the overlap to sqrt(eps).
        overlap_sq = 1.0;
    }
    let shrink = (1.0 - overlap_sq.powi(n as i32)).max(0.0).sqrt();
    Ok((0.5 * (1.0 - shrink)).clamp(0.0, 0.5))
}

/// Fidelity sandwich, the pure-state tightening when it applies, the exact
/// error while the tensor power fits under `cap`, and the asymptotic rates.
pub fn error_bounds(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    n: u32,
    cap: usize,
) -> Result<ErrorReport> {
    ensure_same_dim(rho0, rho1)?;
    if n == 0 {
        return Err(Error::ZeroCopies);
    }
    let f = divergence::fidelity(rho0, rho1)?;
    let f_n = f.powi(n as i32);
    let lower_fid = 0.5 * (1.0 - (1.0 - f_n * f_n).max(0.0).sqrt());
    let upper_fid = (0.5 * f_n).min(0.5);

    let exact_error = match joint_error_exact(rho0, rho1, n, cap) {
        Ok(e) => Some(e),
        Err(Error::DimCapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };

    let upper_pure = match rho0.rank_one_vector(PURE_RANK_TOL) {
        Some(psi) => {
            let q = psi.expectation(rho1.matrix())?.clamp(0.0, 1.0);
            Some(0.5 * q.powi(n as i32))
        }
        None => None,
    };

    let d01 = divergence::qrel_entropy(rho0, rho1)?;
    let d10 = divergence::qrel_entropy(rho1, rho0)?;

    Ok(ErrorReport {
        n,
        exact_error,
        lower_fid,
        upper_fid,
        upper_pure,
        rate_lower_fid: 2.0 * f.ln(),
        rate_upper_fid: f.ln(),
        rate_lower_relent: -d01.max(d10),
    })
}

/// Moment of the eigenvalue distribution of rho0^(x)N - rho1^(x)N via the
/// sign-alternating expansion over all 0/1 words of length `n_moment`:
/// each word contributes (-1)^popcount (tr prod rho_k)^N / d^N. The cost is
/// 2^n_moment small-matrix products, independent of N.
pub fn moments_formula(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    n_moment: u32,
    n_copies: u32,
    moment_cap: u32,
) -> Result<f64> {
    ensure_same_dim(rho0, rho1)?;
    if n_moment == 0 || n_copies == 0 {
        return Err(Error::ZeroCopies);
    }
    // The word enumeration below shifts 1u64 by the order.
    if n_moment > moment_cap || n_moment >= 63 {
        return Err(Error::MomentCapExceeded {
            order: n_moment,
            cap: moment_cap.min(62),
        });
    }
    let mats = [rho0.matrix(), rho1.matrix()];
    let mut total = Complex::new(0.0, 0.0);
    for word in 0u64..(1u64 << n_moment) {
        let first = (word & 1) as usize;
        let mut prod = mats[first].clone();
        for pos in 1..n_moment {
            let k = ((word >> pos) & 1) as usize;
            prod *= mats[k];
        }
        let tr: C64 = prod.trace();
        let sign = if word.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        total += tr.powu(n_copies) * Complex::new(sign, 0.0);
    }
    let scale = (1.0 / rho0.dim() as f64).powi(n_copies as i32);
    Ok(scale * total.re)
}

/// Number of compositions of n into k parts, C(n + k - 1, k - 1).
fn composition_count(n: u32, k: usize) -> u128 {
    let mut res: u128 = 1;
    for i in 1..k as u128 {
        res = res.saturating_mul(n as u128 + i) / i;
    }
    res
}

/// Visits every composition of `n` into `k` parts in colexicographic order
/// (last coordinate varies slowest), a fixed order so emitted tables are
/// reproducible.
fn for_each_composition(n: u32, k: usize, f: &mut impl FnMut(&[u32])) {
    fn rec(x: &mut [u32], pos: usize, left: u32, f: &mut impl FnMut(&[u32])) {
        if pos == 0 {
            x[0] = left;
            f(x);
            return;
        }
        for v in 0..=left {
            x[pos] = v;
            rec(x, pos - 1, left - v, f);
        }
    }
    let mut x = vec![0u32; k];
    rec(&mut x, k - 1, n, f);
}

/// Exact average error of the optimal classical test on `n` i.i.d. samples:
/// (1 - ||P_N - Q_N||_1 / 2) / 2, with the total variation accumulated over
/// multinomially-weighted outcome counts.
pub fn classical_multinomial_error(
    p: &ProbVector,
    q: &ProbVector,
    n: u32,
    composition_cap: u64,
) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    if n == 0 {
        return Err(Error::ZeroCopies);
    }
    let k = p.len();
    let count = composition_count(n, k);
    if count > composition_cap as u128 {
        return Err(Error::CompositionCapExceeded {
            count,
            cap: composition_cap,
        });
    }
    // ln i! for i = 0..=n
    let mut lnfact = vec![0.0f64; n as usize + 1];
    for i in 1..=n as usize {
        lnfact[i] = lnfact[i - 1] + (i as f64).ln();
    }
    let log_weight = |counts: &[u32], probs: &[f64]| -> f64 {
        let mut lw = lnfact[n as usize];
        for (&x, &prob) in counts.iter().zip(probs) {
            if x == 0 {
                continue;
            }
            if prob == 0.0 {
                return f64::NEG_INFINITY;
            }
            lw += x as f64 * prob.ln() - lnfact[x as usize];
        }
        lw
    };
    let mut total_variation = 0.0;
    for_each_composition(n, k, &mut |counts| {
        let pw = log_weight(counts, p.probs()).exp();
        let qw = log_weight(counts, q.probs()).exp();
        total_variation += (pw - qw).abs();
    });
    Ok((0.5 * (1.0 - 0.5 * total_variation)).clamp(0.0, 0.5))
}

/// When the states commute (commutator below 1e-10 in Frobenius norm),
/// returns their eigenvalue distributions in a common eigenbasis, paired
/// eigenvector by eigenvector. Returns `None` for non-commuting or
/// dimension-mismatched inputs.
pub fn commuting_reduction(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
) -> Option<(ProbVector, ProbVector)> {
    if rho0.dim() != rho1.dim() {
        return None;
    }
    if linalg::commutator_norm(rho0.matrix(), rho1.matrix()) > COMMUTE_TOL {
        return None;
    }
    let d = rho0.dim();
    let spec0 = linalg::hermitian_eig(rho0.matrix()).ok()?;
    let mut basis = spec0.eigenvectors().clone();

    // Inside each degenerate cluster of rho0 the basis is arbitrary; rotate
    // it so rho1 is diagonal there too.
    let evals = spec0.eigenvalues();
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && evals[end] - evals[end - 1] <= CLUSTER_TOL {
            end += 1;
        }
        let m = end - start;
        if m > 1 {
            let sub = basis.columns(start, m).into_owned();
            let restricted = sub.adjoint() * rho1.matrix() * &sub;
            let sub_spec = linalg::hermitian_eig(&restricted).ok()?;
            let rotated = sub * sub_spec.eigenvectors();
            basis.columns_mut(start, m).copy_from(&rotated);
        }
        start = end;
    }

    let diag_of = |rho: &DensityMatrix| -> Option<ProbVector> {
        let mut probs = Vec::with_capacity(d);
        for j in 0..d {
            let v = basis.column(j);
            probs.push((v.adjoint() * rho.matrix() * v)[(0, 0)].re);
        }
        ProbVector::new(probs).ok()
    };
    Some((diag_of(rho0)?, diag_of(rho1)?))
}
