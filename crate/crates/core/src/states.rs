//! Quantum domain types — density matrices, pure states, POVMs, outcome
//! distributions — the Born rule, and the concrete example state pairs.

use nalgebra::DVector;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64, PSD_CLAMP_TOL};

pub type CVector = DVector<C64>;

const TRACE_TOL: f64 = 1e-10;
const PURE_NORM_TOL: f64 = 1e-12;
const POVM_TOL: f64 = 1e-9;
const PROB_CLAMP_TOL: f64 = 1e-12;
const PROB_SUM_TOL: f64 = 1e-9;

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
        ],
    )
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(0.0, 0.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, -1.0),
            C64::new(0.0, 0.0),
        ],
    )
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(-1.0, 0.0),
        ],
    )
}

/// Unit-trace positive-semidefinite Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-10), positivity (eigenvalues >= -1e-10),
    /// and unit trace (1e-10).
    pub fn new(mat: CMatrix) -> Result<Self> {
        linalg::ensure_hermitian(&mat)?;
        let trace = mat.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::BadTrace { trace: trace.re });
        }
        let eigs = linalg::hermitian_eigenvalues(&mat)?;
        if let Some(&min) = eigs.first() {
            if min < -PSD_CLAMP_TOL {
                return Err(Error::NotPsd { eigenvalue: min });
            }
        }
        Ok(Self { mat })
    }

    /// Constructor for matrices already known to satisfy the invariants.
    pub(crate) fn from_valid(mat: CMatrix) -> Self {
        Self { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.mat).expect("validated at construction")
    }

    /// The top eigenvector when the state is rank-one within `tol`
    /// (largest eigenvalue >= 1 - tol), `None` otherwise.
    pub fn rank_one_vector(&self, tol: f64) -> Option<PureState> {
        let spec = linalg::hermitian_eig(&self.mat).expect("validated at construction");
        let top = *spec.eigenvalues().last()?;
        if top >= 1.0 - tol {
            let col = spec.eigenvectors().column(spec.dim() - 1).into_owned();
            Some(PureState::normalized(col).expect("eigenvector has unit norm"))
        } else {
            None
        }
    }

    /// Parse the textual state format: `{"dim": d, "re": [[..]], "im": [[..]]}`.
    /// Invariants are validated after parsing.
    pub fn from_state_json(text: &str) -> Result<Self> {
        let file: StateFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let d = file.dim;
        let check_shape = |name: &str, rows: &Vec<Vec<f64>>| -> Result<()> {
            if rows.len() != d {
                return Err(Error::Parse(format!(
                    "field '{name}' has {} rows, expected dim = {d}",
                    rows.len()
                )));
            }
            for (i, row) in rows.iter().enumerate() {
                if row.len() != d {
                    return Err(Error::Parse(format!(
                        "field '{name}' row {i} has length {}, expected dim = {d}",
                        row.len()
                    )));
                }
            }
            Ok(())
        };
        check_shape("re", &file.re)?;
        check_shape("im", &file.im)?;
        let mat = CMatrix::from_fn(d, d, |i, j| C64::new(file.re[i][j], file.im[i][j]));
        Self::new(mat)
    }

    pub fn to_state_json(&self) -> String {
        let d = self.dim();
        let file = StateFile {
            dim: d,
            re: (0..d)
                .map(|i| (0..d).map(|j| self.mat[(i, j)].re).collect())
                .collect(),
            im: (0..d)
                .map(|i| (0..d).map(|j| self.mat[(i, j)].im).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("plain numeric struct serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct StateFile {
    dim: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// Unit vector in the Hilbert space; kept as a vector so the rank-one
/// structure stays exact.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    vec: CVector,
}

impl PureState {
    /// Requires the Euclidean norm to be 1 within 1e-12.
    pub fn new(vec: CVector) -> Result<Self> {
        if !vec.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = vec.norm();
        if (norm - 1.0).abs() > PURE_NORM_TOL {
            return Err(Error::BadNorm { norm });
        }
        Ok(Self { vec })
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn normalized(vec: CVector) -> Result<Self> {
        if !vec.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = vec.norm();
        if norm == 0.0 {
            return Err(Error::BadNorm { norm });
        }
        Ok(Self {
            vec: vec / C64::new(norm, 0.0),
        })
    }

    /// Computational basis vector |k> in dimension `dim`.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dim {dim}");
        let mut vec = CVector::zeros(dim);
        vec[k] = C64::new(1.0, 0.0);
        Self { vec }
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn vector(&self) -> &CVector {
        &self.vec
    }

    /// Rank-one projector |psi><psi|.
    pub fn projector(&self) -> CMatrix {
        &self.vec * self.vec.adjoint()
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_valid(self.projector())
    }

    /// Inner product <self|other>.
    pub fn overlap(&self, other: &PureState) -> C64 {
        self.vec.dotc(&other.vec)
    }

    /// Re <psi|M|psi>.
    pub fn expectation(&self, m: &CMatrix) -> Result<f64> {
        if m.nrows() != self.dim() || m.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: m.nrows(),
                right: self.dim(),
            });
        }
        Ok(self.vec.dotc(&(m * &self.vec)).re)
    }
}

/// Finite list of positive operators summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    outcomes: Vec<CMatrix>,
}

impl Povm {
    pub fn new(outcomes: Vec<CMatrix>) -> Result<Self> {
        let dim = match outcomes.first() {
            Some(m) => m.nrows(),
            None => return Err(Error::IncompletePovm { defect: 1.0 }),
        };
        let mut sum = CMatrix::zeros(dim, dim);
        for m in &outcomes {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    left: m.nrows(),
                    right: dim,
                });
            }
            let defect = linalg::hermiticity_defect(m);
            if defect > POVM_TOL {
                return Err(Error::NotHermitian { defect });
            }
            // The POVM tolerance (1e-9) is looser than the spectral gate;
            // fold the accepted defect away before the PSD check.
            let eigs = linalg::hermitian_eigenvalues(&linalg::hermitize(m))?;
            if let Some(&min) = eigs.first() {
                if min < -POVM_TOL {
                    return Err(Error::NotPsd { eigenvalue: min });
                }
            }
            sum += m;
        }
        let defect = (sum - CMatrix::identity(dim, dim))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if defect > POVM_TOL {
            return Err(Error::IncompletePovm { defect });
        }
        Ok(Self { outcomes })
    }

    /// Two-outcome measurement {M, I - M}.
    pub fn complement_pair(m: CMatrix) -> Result<Self> {
        let id = CMatrix::identity(m.nrows(), m.ncols());
        let rest = &id - &m;
        Self::new(vec![m, rest])
    }

    pub fn dim(&self) -> usize {
        self.outcomes[0].nrows()
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn outcomes(&self) -> &[CMatrix] {
        &self.outcomes
    }
}

/// Classical outcome distribution induced by a measurement on a state.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    probs: Vec<f64>,
}

impl ProbVector {
    /// Entries in [-1e-12, 0) clamp to zero; the sum must be 1 within 1e-9,
    /// after which the vector is renormalized exactly.
    pub fn new(raw: Vec<f64>) -> Result<Self> {
        let mut probs = Vec::with_capacity(raw.len());
        for &p in &raw {
            if !p.is_finite() || p < -PROB_CLAMP_TOL {
                return Err(Error::NegativeProbability { value: p });
            }
            probs.push(p.max(0.0));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::BadProbabilitySum { sum });
        }
        for p in &mut probs {
            *p /= sum;
        }
        Ok(Self { probs })
    }

    pub fn uniform(len: usize) -> Self {
        Self {
            probs: vec![1.0 / len as f64; len],
        }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

impl std::ops::Index<usize> for ProbVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.probs[i]
    }
}

/// Born rule: probs\[i\] = Re tr(M_i rho).
pub fn outcome_distribution(m: &Povm, rho: &DensityMatrix) -> Result<ProbVector> {
    if m.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: rho.dim(),
        });
    }
    let mut probs = Vec::with_capacity(m.len());
    for outcome in m.outcomes() {
        // tr(M rho) without forming the product matrix.
        let mut tr = C64::new(0.0, 0.0);
        for i in 0..rho.dim() {
            for k in 0..rho.dim() {
                tr += outcome[(i, k)] * rho.matrix()[(k, i)];
            }
        }
        if tr.im.abs() > 1e-10 {
            return Err(Error::ImaginaryOutcome { value: tr.im });
        }
        probs.push(tr.re);
    }
    ProbVector::new(probs)
}

/// The qubit family rho0 = (I + a sx)/2, rho1 = (I + b cos(theta) sx + b sin(theta) sy)/2.
pub fn pauli_pair(a: f64, b: f64, theta: f64) -> Result<(DensityMatrix, DensityMatrix)> {
    if !(a.is_finite() && b.is_finite() && theta.is_finite()) {
        return Err(Error::NonFinite);
    }
    if a.abs() > 1.0 {
        return Err(Error::BlochOutOfRange(a.abs()));
    }
    if b.abs() > 1.0 {
        return Err(Error::BlochOutOfRange(b.abs()));
    }
    let half = C64::new(0.5, 0.0);
    let id = CMatrix::identity(2, 2);
    let rho0 = (&id + pauli_x() * C64::new(a, 0.0)) * half;
    let rho1 = (&id
        + pauli_x() * C64::new(b * theta.cos(), 0.0)
        + pauli_y() * C64::new(b * theta.sin(), 0.0))
        * half;
    Ok((DensityMatrix::new(rho0)?, DensityMatrix::new(rho1)?))
}

/// The two-particle test pair: rho0 projects onto (|00> + |11>)/sqrt(2), and
/// rho1 is the even classical mixture of |00> and |11>.
pub fn entanglement_pair() -> (DensityMatrix, DensityMatrix) {
    let half = C64::new(0.5, 0.0);
    let mut rho0 = CMatrix::zeros(4, 4);
    rho0[(0, 0)] = half;
    rho0[(0, 3)] = half;
    rho0[(3, 0)] = half;
    rho0[(3, 3)] = half;
    let mut rho1 = CMatrix::zeros(4, 4);
    rho1[(0, 0)] = half;
    rho1[(3, 3)] = half;
    (
        DensityMatrix::new(rho0).expect("projector onto a unit vector"),
        DensityMatrix::new(rho1).expect("diagonal unit-trace mixture"),
    )
}

/// The entangled vector (|00> + |11>)/sqrt(2) behind [`entanglement_pair`].
pub fn entangled_vector() -> PureState {
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut vec = CVector::zeros(4);
    vec[0] = s;
    vec[3] = s;
    PureState::new(vec).expect("norm is 1")
}

fn gauss(rng: &mut impl Rng) -> f64 {
    // Box-Muller; avoids ln(0).
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn ginibre(dim: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| C64::new(gauss(rng), gauss(rng)))
}

/// Haar-distributed unitary from the QR factorization of a complex
/// Gaussian matrix, with the R diagonal phases normalized.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let qr = ginibre(dim, rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / C64::new(d.norm(), 0.0)
        } else {
            C64::new(1.0, 0.0)
        };
        q.column_mut(j).iter_mut().for_each(|z| *z *= phase.conj());
    }
    q
}

/// Random mixed state: eigenvalues sampled uniformly from the simplex,
/// conjugated by a Haar unitary.
pub fn random_density(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    let mut weights: Vec<f64> = (0..dim)
        .map(|_| -f64::ln(rng.gen_range(f64::MIN_POSITIVE..1.0)))
        .collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    let u = random_unitary(dim, rng);
    let mut mat = CMatrix::zeros(dim, dim);
    for (k, &w) in weights.iter().enumerate() {
        let col = u.column(k);
        mat += col * col.adjoint() * C64::new(w, 0.0);
    }
    DensityMatrix::new(mat).expect("simplex-weighted projector sum is a state")
}

/// Random pure state: normalized complex Gaussian vector.
pub fn random_pure(dim: usize, rng: &mut impl Rng) -> PureState {
    loop {
        let vec = CVector::from_fn(dim, |_, _| C64::new(gauss(rng), gauss(rng)));
        if vec.norm() > 1e-6 {
            return PureState::normalized(vec).expect("nonzero vector");
        }
    }
}

/// Random orthogonal rank-one projective measurement.
pub fn random_projective_povm(dim: usize, rng: &mut impl Rng) -> Povm {
    let u = random_unitary(dim, rng);
    let outcomes = (0..dim)
        .map(|k| {
            let col = u.column(k);
            col * col.adjoint()
        })
        .collect();
    Povm::new(outcomes).expect("columns of a unitary resolve the identity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn projector_of_basis_state() {
        let p = PureState::basis_state(2, 0).projector();
        assert_eq!(p[(0, 0)], C64::new(1.0, 0.0));
        assert_eq!(p[(1, 1)], C64::new(0.0, 0.0));
    }

    #[test]
    fn projector_of_plus_state_is_all_halves() {
        let plus = PureState::normalized(CVector::from_vec(vec![
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
        ]))
        .unwrap();
        let p = plus.projector();
        for i in 0..2 {
            for j in 0..2 {
                assert!((p[(i, j)] - C64::new(0.5, 0.0)).norm() <= 1e-15);
            }
        }
    }

    #[test]
    fn projector_is_idempotent_unit_trace() {
        let psi = random_pure(5, &mut rng(3));
        let p = psi.projector();
        assert!((&p * &p - &p).norm() <= 1e-10);
        assert!((p.trace().re - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn born_rule_reproduces_overlaps() {
        let mut r = rng(11);
        let psi = random_pure(4, &mut r);
        let phi = random_pure(4, &mut r);
        let povm = Povm::complement_pair(psi.projector()).unwrap();
        let dist = outcome_distribution(&povm, &phi.to_density()).unwrap();
        let overlap = psi.overlap(&phi).norm_sqr();
        assert!((dist[0] - overlap).abs() <= 1e-12);
    }

    #[test]
    fn computational_measurement_of_maximally_mixed() {
        let povm = Povm::new(vec![
            PureState::basis_state(2, 0).projector(),
            PureState::basis_state(2, 1).projector(),
        ])
        .unwrap();
        let mixed = DensityMatrix::new(CMatrix::identity(2, 2) * C64::new(0.5, 0.0)).unwrap();
        let dist = outcome_distribution(&povm, &mixed).unwrap();
        assert!((dist[0] - 0.5).abs() <= 1e-12 && (dist[1] - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn pure_state_measured_against_itself_is_certain() {
        let psi = random_pure(3, &mut rng(5));
        let povm = Povm::complement_pair(psi.projector()).unwrap();
        let dist = outcome_distribution(&povm, &psi.to_density()).unwrap();
        assert!((dist[0] - 1.0).abs() <= 1e-12);
        assert!(dist[1].abs() <= 1e-12);
    }

    #[test]
    fn entangled_projector_measurement_on_mixture_is_even() {
        let (_, rho1) = entanglement_pair();
        let povm = Povm::complement_pair(entangled_vector().projector()).unwrap();
        let dist = outcome_distribution(&povm, &rho1).unwrap();
        assert!((dist[0] - 0.5).abs() <= 1e-12);
        assert!((dist[1] - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn outcome_distribution_rejects_dim_mismatch() {
        let povm = Povm::complement_pair(PureState::basis_state(2, 0).projector()).unwrap();
        let (rho0, _) = entanglement_pair();
        assert!(matches!(
            outcome_distribution(&povm, &rho0).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn pauli_pair_trivial_is_maximally_mixed() {
        let (rho0, rho1) = pauli_pair(0.0, 0.0, 0.0).unwrap();
        let mixed = CMatrix::identity(2, 2) * C64::new(0.5, 0.0);
        assert!((rho0.matrix() - &mixed).norm() <= 1e-15);
        assert!((rho1.matrix() - &mixed).norm() <= 1e-15);
    }

    #[test]
    fn pauli_pair_extreme_is_plus_projector() {
        let (rho0, _) = pauli_pair(1.0, 0.0, 0.0).unwrap();
        let plus = PureState::normalized(CVector::from_vec(vec![
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
        ]))
        .unwrap();
        assert!((rho0.matrix() - plus.projector()).norm() <= 1e-12);
    }

    #[test]
    fn pauli_pair_eigenvalues_follow_bloch_length() {
        let (rho0, rho1) = pauli_pair(0.8, 0.8, std::f64::consts::FRAC_PI_2).unwrap();
        for rho in [rho0, rho1] {
            let eigs = rho.eigenvalues();
            assert!((eigs[0] - 0.1).abs() <= 1e-12);
            assert!((eigs[1] - 0.9).abs() <= 1e-12);
        }
    }

    #[test]
    fn pauli_pair_rejects_long_bloch_vectors() {
        assert!(matches!(
            pauli_pair(1.2, 0.0, 0.0).unwrap_err(),
            Error::BlochOutOfRange(_)
        ));
        assert!(matches!(
            pauli_pair(0.0, -1.01, 0.0).unwrap_err(),
            Error::BlochOutOfRange(_)
        ));
    }

    #[test]
    fn entanglement_pair_matches_printed_matrices() {
        let (rho0, rho1) = entanglement_pair();
        for (i, j) in [(0usize, 0usize), (0, 3), (3, 0), (3, 3)] {
            assert_eq!(rho0.matrix()[(i, j)], C64::new(0.5, 0.0));
        }
        assert_eq!(rho0.matrix().iter().map(|z| z.norm()).sum::<f64>(), 2.0);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j && (i == 0 || i == 3) { 0.5 } else { 0.0 };
                assert_eq!(rho1.matrix()[(i, j)], C64::new(expect, 0.0));
            }
        }
        assert!((rho0.matrix().trace().re - 1.0).abs() == 0.0);
        assert!((rho1.matrix().trace().re - 1.0).abs() == 0.0);
    }

    #[test]
    fn density_rejects_bad_trace_and_negativity() {
        assert!(matches!(
            DensityMatrix::new(CMatrix::identity(2, 2)).unwrap_err(),
            Error::BadTrace { .. }
        ));
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = C64::new(1.5, 0.0);
        m[(1, 1)] = C64::new(-0.5, 0.0);
        assert!(matches!(
            DensityMatrix::new(m).unwrap_err(),
            Error::NotPsd { .. }
        ));
    }

    #[test]
    fn rank_one_detection() {
        let psi = random_pure(3, &mut rng(7));
        let pure = psi.to_density();
        let recovered = pure.rank_one_vector(1e-9).expect("rank one");
        assert!((recovered.overlap(&psi).norm() - 1.0).abs() <= 1e-9);
        let mixed = random_density(3, &mut rng(8));
        assert!(mixed.rank_one_vector(1e-9).is_none());
    }

    #[test]
    fn state_json_round_trip() {
        let (rho0, _) = pauli_pair(0.8, 0.8, 1.1).unwrap();
        let text = rho0.to_state_json();
        let back = DensityMatrix::from_state_json(&text).unwrap();
        assert!((back.matrix() - rho0.matrix()).norm() <= 1e-15);
    }

    #[test]
    fn state_json_reports_line_on_syntax_error() {
        let err = DensityMatrix::from_state_json("{\n  \"dim\": 2,\n  oops\n}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "missing line diagnostics: {msg}");
    }

    #[test]
    fn state_json_rejects_shape_mismatch() {
        let text = r#"{"dim": 2, "re": [[1.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#;
        let err = DensityMatrix::from_state_json(text).unwrap_err();
        assert!(err.to_string().contains("re"), "{err}");
    }

    #[test]
    fn prob_vector_clamps_and_rejects() {
        let p = ProbVector::new(vec![1.0 + 5e-13, -5e-13]).unwrap();
        assert_eq!(p[1], 0.0);
        assert!((p.probs().iter().sum::<f64>() - 1.0).abs() <= 1e-15);
        assert!(matches!(
            ProbVector::new(vec![1.0, -1e-6]).unwrap_err(),
            Error::NegativeProbability { .. }
        ));
        assert!(matches!(
            ProbVector::new(vec![0.7, 0.2]).unwrap_err(),
            Error::BadProbabilitySum { .. }
        ));
    }

    #[test]
    fn random_generators_produce_valid_objects() {
        let mut r = rng(42);
        for dim in [2usize, 3, 4] {
            let u = random_unitary(dim, &mut r);
            assert!((u.adjoint() * &u - CMatrix::identity(dim, dim)).norm() <= 1e-10);
            let _rho = random_density(dim, &mut r);
            let _povm = random_projective_povm(dim, &mut r);
        }
    }

    #[test]
    fn tensor_power_of_state_stays_valid() {
        let (rho0, _) = pauli_pair(0.6, 0.0, 0.0).unwrap();
        let powered = linalg::tensor_power(rho0.matrix(), 3, 4096).unwrap();
        let state = DensityMatrix::new(powered).unwrap();
        assert_eq!(state.dim(), 8);
    }
}
