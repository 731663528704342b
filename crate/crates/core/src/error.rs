use thiserror::Error;

pub type Result<T, E = FockError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("mode index {mode} out of range for a {modes}-mode space")]
    ModeOutOfRange { mode: usize, modes: usize },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    PsdViolation { min_eigenvalue: f64 },

    #[error("matrix is not Hermitian (max |A - A^H| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid trace {trace}")]
    InvalidTrace { trace: f64 },

    #[error("subspace weight {weight:e} is too small to renormalize")]
    EmptySubspace { weight: f64 },

    #[error("complement overlaps the qubit subspace (overlap {overlap:e})")]
    ComplementNotOrthogonal { overlap: f64 },

    #[error("unphysical channel parameters: classical noise variance {classical_var:e}")]
    UnphysicalParameters { classical_var: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integration grid too coarse: completeness error {error:e}")]
    GridTooCoarse { error: f64 },

    #[error("acceptance probability {probability:e} is below the reporting floor")]
    AcceptanceTooSmall { probability: f64 },

    #[error("maximum-likelihood iteration failed to increase the likelihood at iteration {iteration}")]
    ConvergenceFailure { iteration: usize },

    #[error("homodyne dataset is empty")]
    EmptyDataset,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("numerical failure: non-finite {0}")]
    NonFinite(String),
    #[error("i/o error: {0}")]
    Io(String),
}
