use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A defining coefficient `a_n` vanished. `index` is `None` for the tail ratio.
    #[error("a_n must be nonzero (violated at {})", match .index { Some(i) => format!("n = {i}"), None => "the tail ratio rho".to_string() })]
    NonzeroViolation { index: Option<usize> },

    #[error("kernel specification is malformed: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shift is not left-invertible: |a_n / a_(n+1)| is not bounded away from zero (inf = {epsilon:e})")]
    NotLeftInvertible { epsilon: f64 },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("off-band magnitude {magnitude:e} lies in the indeterminate band [{tolerance:e}, {upper:e}]", upper = 10.0 * .tolerance)]
    IndeterminateBand { magnitude: f64, tolerance: f64 },

    #[error("window doubling changed a coefficient by {deviation:e} (limit {limit:e})")]
    UnstableTruncation { deviation: f64, limit: f64 },

    #[error("kernel series diverges at this point (geometric tail ratio {ratio})")]
    DivergenceWarning { ratio: f64 },

    #[error("kernel is not truncated: {0}")]
    NotTruncated(String),

    #[error("M_z is numerically normal (commutator max {magnitude:e})")]
    NormalityDetected { magnitude: f64 },
}
