//! Dense complex matrix algebra and the Hermitian spectral toolkit the rest
//! of the crate builds on: tensor products, eigendecomposition, spectral
//! functions, trace norm, and the support pseudo-inverse square root.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Max entrywise |H - H^dag| accepted before an input is rejected as non-Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Eigenvalues in [-PSD_CLAMP_TOL, 0) are treated as exact zeros; anything
/// more negative is a hard error.
pub const PSD_CLAMP_TOL: f64 = 1e-10;
/// Default relative cutoff for numerical rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Real eigenvalues (ascending) and matching orthonormal eigenvectors of a
/// Hermitian matrix. Column `k` of `eigenvectors` pairs with `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct HermitianSpectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
}

impl HermitianSpectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    /// V f(Λ) V^dag for a scalar function applied to the eigenvalues.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        self.apply_values(&mapped)
    }

    /// V diag(vals) V^dag with one value per eigenvector column.
    pub fn apply_values(&self, vals: &[f64]) -> CMatrix {
        assert_eq!(vals.len(), self.eigenvalues.len());
        let mut scaled = self.eigenvectors.clone();
        for (j, &v) in vals.iter().enumerate() {
            let fl = C64::new(v, 0.0);
            scaled.column_mut(j).iter_mut().for_each(|z| *z *= fl);
        }
        &scaled * self.eigenvectors.adjoint()
    }

    /// V Λ V^dag, for residual checks.
    pub fn reconstruct(&self) -> CMatrix {
        self.apply(|x| x)
    }

    /// Rank-one projector onto eigenvector `k`.
    pub fn eigenprojector(&self, k: usize) -> CMatrix {
        let v = self.eigenvectors.column(k);
        v * v.adjoint()
    }
}

fn ensure_finite(m: &CMatrix) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn ensure_square(m: &CMatrix) -> Result<()> {
    if m.nrows() == m.ncols() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        })
    }
}

/// Max entrywise |H - H^dag|. The matrix must be square.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut defect = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if d > defect {
                defect = d;
            }
        }
    }
    defect
}

pub(crate) fn ensure_hermitian(m: &CMatrix) -> Result<()> {
    ensure_square(m)?;
    ensure_finite(m)?;
    let defect = hermiticity_defect(m);
    if defect > HERMITICITY_TOL {
        return Err(Error::NotHermitian { defect });
    }
    Ok(())
}

pub(crate) fn to_faer(m: &CMatrix) -> faer::Mat<C64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// (H + H^dag) / 2, for callers that accept a looser Hermiticity defect
/// than the spectral gate and need the remainder folded away.
pub(crate) fn hermitize(m: &CMatrix) -> CMatrix {
    let mut s = m.clone();
    let n = m.nrows();
    for i in 0..n {
        s[(i, i)] = C64::new(m[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            s[(i, j)] = avg;
            s[(j, i)] = avg.conj();
        }
    }
    s
}

/// Singular values, descending.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    ensure_finite(m)?;
    to_faer(m).singular_values().map_err(|_| Error::EigenFailed)
}

/// Kronecker product; dimensions multiply.
pub fn tensor_product(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// n-fold Kronecker power, left-associated. Fails if the resulting
/// dimension would exceed `cap`.
pub fn tensor_power(a: &CMatrix, n: u32, cap: usize) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::ZeroCopies);
    }
    let grows = |d: usize| -> Result<usize> {
        d.checked_pow(n)
            .filter(|&p| p <= cap)
            .ok_or(Error::DimCapExceeded {
                required: d.checked_pow(n).unwrap_or(usize::MAX),
                cap,
            })
    };
    grows(a.nrows())?;
    grows(a.ncols())?;
    let mut out = a.clone();
    for _ in 1..n {
        out = out.kronecker(a);
    }
    Ok(out)
}

/// Spectral decomposition of a Hermitian matrix, eigenvalues ascending.
/// The solver reads the lower triangle, so tiny asymmetries below
/// [`HERMITICITY_TOL`] cannot leak into the result.
pub fn hermitian_eig(h: &CMatrix) -> Result<HermitianSpectrum> {
    ensure_hermitian(h)?;
    let eig = to_faer(h)
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|_| Error::EigenFailed)?;
    let n = h.nrows();
    let s = eig.S().column_vector();
    let u = eig.U();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[i].re.total_cmp(&s[j].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| s[i].re).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |i, j| u[(i, order[j])]);
    Ok(HermitianSpectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only (ascending); cheaper than [`hermitian_eig`] when the
/// eigenvectors are not needed.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Result<Vec<f64>> {
    ensure_hermitian(h)?;
    let mut vals: Vec<f64> = to_faer(h)
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .map_err(|_| Error::EigenFailed)?;
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// V f(Λ) V^dag. `f` returns `None` where it is undefined, which is
/// reported as a domain error naming the offending eigenvalue.
pub fn hermitian_fn(h: &CMatrix, f: impl Fn(f64) -> Option<f64>) -> Result<CMatrix> {
    let spec = hermitian_eig(h)?;
    let mut mapped = Vec::with_capacity(spec.dim());
    for &lambda in spec.eigenvalues() {
        match f(lambda) {
            Some(v) if v.is_finite() => mapped.push(v),
            _ => return Err(Error::FnDomain { eigenvalue: lambda }),
        }
    }
    Ok(spec.apply_values(&mapped))
}

/// Principal square root of a PSD matrix. Eigenvalues in
/// [-PSD_CLAMP_TOL, 0) are clamped to zero; more negative ones are rejected.
pub fn sqrt_psd(h: &CMatrix) -> Result<CMatrix> {
    let spec = hermitian_eig(h)?;
    if let Some(&min) = spec.eigenvalues().first() {
        if min < -PSD_CLAMP_TOL {
            return Err(Error::NotPsd { eigenvalue: min });
        }
    }
    Ok(spec.apply(|lambda| if lambda > 0.0 { lambda.sqrt() } else { 0.0 }))
}

/// Sum of the absolute values of the eigenvalues of a Hermitian matrix.
pub fn trace_norm(h: &CMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(h)?.iter().map(|l| l.abs()).sum())
}

/// λ_i -> λ_i^{-1/2} on the numerical support (λ_i > rank_tol · λ_max),
/// zero elsewhere. The zero matrix maps to the zero matrix.
pub fn support_pinv_sqrt(h: &CMatrix, rank_tol: f64) -> Result<CMatrix> {
    let spec = hermitian_eig(h)?;
    if let Some(&min) = spec.eigenvalues().first() {
        if min < -PSD_CLAMP_TOL {
            return Err(Error::NotPsd { eigenvalue: min });
        }
    }
    let max = spec.eigenvalues().last().copied().unwrap_or(0.0).max(0.0);
    let cutoff = rank_tol * max;
    Ok(spec.apply(|lambda| if lambda > cutoff && lambda > 0.0 { 1.0 / lambda.sqrt() } else { 0.0 }))
}

/// Frobenius norm of the commutator AB - BA.
pub fn commutator_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    (a * b - b * a).norm()
}
