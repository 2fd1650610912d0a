//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("matrix is not Hermitian: max |H - H^dag| entry is {defect:.3e}")]
    NotHermitian { defect: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:.6e}")]
    NotPsd { eigenvalue: f64 },

    #[error("trace must be 1, got {trace}")]
    BadTrace { trace: f64 },

    #[error("state vector norm must be 1, got {norm}")]
    BadNorm { norm: f64 },

    #[error("measurement outcomes must sum to identity: max deviation {defect:.3e}")]
    IncompletePovm { defect: f64 },

    #[error("tensor-power dimension {required} exceeds cap {cap}")]
    DimCapExceeded { required: usize, cap: usize },

    #[error("moment order {order} exceeds cap {cap}")]
    MomentCapExceeded { order: u32, cap: u32 },

    #[error("{count} compositions exceed cap {cap}")]
    CompositionCapExceeded { count: u128, cap: u64 },

    #[error("eigendecomposition did not converge")]
    EigenFailed,

    #[error("scalar function undefined at eigenvalue {eigenvalue}")]
    FnDomain { eigenvalue: f64 },

    #[error("probability entry {value:.3e} is below the zero tolerance")]
    NegativeProbability { value: f64 },

    #[error("probabilities sum to {sum}, expected 1 within 1e-9")]
    BadProbabilitySum { sum: f64 },

    #[error("outcome trace has imaginary part {value:.3e}")]
    ImaginaryOutcome { value: f64 },

    #[error("tilted distribution normalizer is zero")]
    ZeroNormalizer,

    #[error("lambda {0} outside [0, 1]")]
    LambdaOutOfRange(f64),

    #[error("divergence balance has no sign change on [0, 1]; distributions are equal or degenerate")]
    NoSignChange,

    #[error("Bloch vector length {0} exceeds 1: state would not be positive")]
    BlochOutOfRange(f64),

    #[error("trial count must be positive")]
    ZeroTrials,

    #[error("copy count must be positive")]
    ZeroCopies,

    #[error("state file: {0}")]
    Parse(String),
}
