//! Classical and quantum distance measures: Kullback-Leibler divergence,
//! classical and quantum fidelity, Chernoff information with its tilted
//! distributions, and quantum relative entropy.
//!
//! Every entropic quantity is in nats.

use crate::error::{Error, Result};
use crate::linalg::{self, DEFAULT_RANK_TOL};
use crate::states::{DensityMatrix, ProbVector};

/// Result of minimizing g(lambda) = ln sum_i p_i^lambda q_i^(1-lambda)
/// over [0, 1]. `chernoff_info` is exactly `-log_sum_min`; it is the
/// optimal asymptotic average-error exponent for classical testing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffResult {
    pub lambda_star: f64,
    pub log_sum_min: f64,
    pub chernoff_info: f64,
}

fn ensure_same_len(p: &ProbVector, q: &ProbVector) -> Result<()> {
    if p.len() == q.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        })
    }
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

/// KL divergence sum_i s_i ln(s_i / p_i) with the 0 ln 0 = 0 convention.
/// Returns +inf when `s` puts mass where `p` has none.
pub fn kl(s: &ProbVector, p: &ProbVector) -> Result<f64> {
    ensure_same_len(s, p)?;
    let mut total = 0.0;
    for (&si, &pi) in s.probs().iter().zip(p.probs()) {
        if si == 0.0 {
            continue;
        }
        if pi == 0.0 {
            return Ok(f64::INFINITY);
        }
        total += si * (si / pi).ln();
    }
    Ok(total.max(0.0))
}

/// Bhattacharyya overlap sum_i sqrt(p_i q_i); 1 iff the distributions match.
pub fn classical_fidelity(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    ensure_same_len(p, q)?;
    let f: f64 = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(&pi, &qi)| (pi * qi).sqrt())
        .sum();
    Ok(f.clamp(0.0, 1.0))
}

/// Terms p_i^lambda q_i^(1-lambda) over the common support. Indices where
/// p_i q_i = 0 contribute zero for every lambda, which makes the endpoint
/// values the limits of the interior expression.
fn tilt_terms(p: &ProbVector, q: &ProbVector, lambda: f64) -> Vec<f64> {
    p.probs()
        .iter()
        .zip(q.probs())
        .map(|(&pi, &qi)| {
            if pi > 0.0 && qi > 0.0 {
                (lambda * pi.ln() + (1.0 - lambda) * qi.ln()).exp()
            } else {
                0.0
            }
        })
        .collect()
}

/// g(lambda) = ln sum_i p_i^lambda q_i^(1-lambda); -inf for disjoint supports.
pub fn log_tilt_sum(p: &ProbVector, q: &ProbVector, lambda: f64) -> f64 {
    tilt_terms(p, q, lambda).iter().sum::<f64>().ln()
}

/// Golden-section search for the minimum of a convex function on [a, b].
fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

/// Minimizes the convex g(lambda) over [0, 1]. Disjoint supports yield
/// `chernoff_info = +inf`; equal distributions report lambda = 1/2.
pub fn chernoff_classical(p: &ProbVector, q: &ProbVector) -> Result<ChernoffResult> {
    ensure_same_len(p, q)?;
    let g = |lambda: f64| log_tilt_sum(p, q, lambda);
    if !p
        .probs()
        .iter()
        .zip(q.probs())
        .any(|(&pi, &qi)| pi > 0.0 && qi > 0.0)
    {
        return Ok(ChernoffResult {
            lambda_star: 0.5,
            log_sum_min: f64::NEG_INFINITY,
            chernoff_info: f64::INFINITY,
        });
    }
    if p.probs() == q.probs() {
        // g is constant; any lambda minimizes.
        let v = g(0.5);
        return Ok(ChernoffResult {
            lambda_star: 0.5,
            log_sum_min: v,
            chernoff_info: -v,
        });
    }
    let mut lambda_star = golden_section_min(g, 0.0, 1.0, 1e-10);
    let mut best = g(lambda_star);
    for endpoint in [0.0, 1.0] {
        let v = g(endpoint);
        if v < best {
            best = v;
            lambda_star = endpoint;
        }
    }
    Ok(ChernoffResult {
        lambda_star,
        log_sum_min: best,
        chernoff_info: -best,
    })
}

/// s_i = p_i^lambda q_i^(1-lambda) / Z over the common support.
pub fn tilted_distribution(p: &ProbVector, q: &ProbVector, lambda: f64) -> Result<ProbVector> {
    ensure_same_len(p, q)?;
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    let mut terms = tilt_terms(p, q, lambda);
    let z: f64 = terms.iter().sum();
    if z <= 0.0 {
        return Err(Error::ZeroNormalizer);
    }
    terms.iter_mut().for_each(|t| *t /= z);
    ProbVector::new(terms)
}

/// D(S_lambda || P) - D(S_lambda || Q), which reduces to
/// sum_i s_i ln(q_i / p_i) and is non-increasing in lambda.
fn kl_balance_gap(p: &ProbVector, q: &ProbVector, lambda: f64) -> Result<f64> {
    let s = tilted_distribution(p, q, lambda)?;
    let mut gap = 0.0;
    for ((&si, &pi), &qi) in s.probs().iter().zip(p.probs()).zip(q.probs()) {
        if si > 0.0 {
            gap += si * (qi.ln() - pi.ln());
        }
    }
    Ok(gap)
}

/// The lambda at which the tilted distribution is KL-equidistant from
/// both hypotheses, found by bisection.
pub fn balance_lambda(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    ensure_same_len(p, q)?;
    let mut lo = 0.0;
    let mut hi = 1.0;
    let gap_lo = kl_balance_gap(p, q, lo)?;
    let gap_hi = kl_balance_gap(p, q, hi)?;
    if !(gap_lo > 0.0 && gap_hi < 0.0) {
        return Err(Error::NoSignChange);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let gap = kl_balance_gap(p, q, mid)?;
        if gap.abs() <= 1e-10 || hi - lo <= 1e-14 {
            return Ok(mid);
        }
        if gap > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Square root restricted to the numerical support, so exact-zero
/// eigenvalues of rank-deficient states cannot inject sqrt(eps) noise.
fn support_sqrt(rho: &DensityMatrix) -> Result<crate::linalg::CMatrix> {
    const REL_CUTOFF: f64 = 1e-12;
    let spec = linalg::hermitian_eig(rho.matrix())?;
    let cutoff = REL_CUTOFF * spec.eigenvalues().last().copied().unwrap_or(0.0).max(0.0);
    Ok(spec.apply(|l| if l > cutoff { l.sqrt() } else { 0.0 }))
}

/// Uhlmann fidelity tr sqrt(sqrt(rho0) rho1 sqrt(rho0)), computed as the
/// nuclear norm of sqrt(rho1) sqrt(rho0). Singular values carry O(eps)
/// absolute error where eigenvalues of the sandwiched product would carry
/// O(sqrt(eps)).
pub fn fidelity(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<f64> {
    ensure_same_dim(rho0, rho1)?;
    let b = support_sqrt(rho1)? * support_sqrt(rho0)?;
    let f: f64 = linalg::singular_values(&b)?.iter().sum();
    Ok(f.clamp(0.0, 1.0))
}

/// Quantum relative entropy tr[rho0 (ln rho0 - ln rho1)], with logs taken
/// on the supports; +inf when rho0 puts weight outside the support of rho1.
pub fn qrel_entropy(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<f64> {
    ensure_same_dim(rho0, rho1)?;
    const SUPPORT_LEAK_TOL: f64 = 1e-10;
    let spec0 = linalg::hermitian_eig(rho0.matrix())?;
    let spec1 = linalg::hermitian_eig(rho1.matrix())?;
    let cut0 = DEFAULT_RANK_TOL * spec0.eigenvalues().last().copied().unwrap_or(0.0).max(0.0);
    let cut1 = DEFAULT_RANK_TOL * spec1.eigenvalues().last().copied().unwrap_or(0.0).max(0.0);

    let entropy_term: f64 = spec0
        .eigenvalues()
        .iter()
        .filter(|&&l| l > cut0)
        .map(|&l| l * l.ln())
        .sum();

    // <w_j| rho0 |w_j> for each eigenvector w_j of rho1.
    let mut cross_term = 0.0;
    let mut leak = 0.0;
    for (j, &mu) in spec1.eigenvalues().iter().enumerate() {
        let w = spec1.eigenvectors().column(j);
        let weight = (w.adjoint() * rho0.matrix() * w)[(0, 0)].re.max(0.0);
        if mu > cut1 {
            cross_term += weight * mu.ln();
        } else {
            leak += weight;
        }
    }
    if leak > SUPPORT_LEAK_TOL {
        return Ok(f64::INFINITY);
    }
    Ok((entropy_term - cross_term).max(0.0))
}
