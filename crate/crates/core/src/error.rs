use thiserror::Error;

/// Errors produced by the numerical routines and the file formats.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("{routine} did not converge within {sweeps} sweeps")]
    NoConvergence { routine: &'static str, sweeps: usize },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("non-finite entry at index {0}")]
    NonFinite(usize),

    #[error("expected a {expected} ket, found a {found} ket")]
    WrongSpaceTag { expected: &'static str, found: &'static str },

    #[error("basis matrix is not unitary (residual {residual:e})")]
    NotUnitaryBasis { residual: f64 },

    #[error("empty factor list")]
    EmptyFactorList,

    #[error("zero matrix has no trace-duality maximizer")]
    ZeroMatrix,

    #[error("zero tensor element")]
    ZeroElement,

    #[error("vector is not a unit vector (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("mixture weights are invalid: {0}")]
    WeightsNotNormalized(String),

    #[error("Gleason reconstruction needs dimension >= 3, got {0}")]
    DimensionTooSmall(usize),

    #[error("inconsistent measure: {0}")]
    InconsistentMeasure(String),

    #[error("empty vector family")]
    EmptyFamily,

    #[error("unsupported summing exponent p = {0} (only 1 and 2)")]
    UnsupportedP(f64),

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidInput(e.to_string())
    }
}
