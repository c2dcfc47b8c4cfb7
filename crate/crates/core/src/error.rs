use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the estimation and experiment pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("regularization {rho} outside the admissible interval ({lower}, 1] for n = {n}, N = {n_sensors}")]
    InvalidRho {
        rho: f64,
        lower: f64,
        n: usize,
        n_sensors: usize,
    },

    #[error("snapshot {index} is zero or non-finite")]
    DegenerateSnapshot { index: usize },

    #[error("{what} did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("matrix is numerically singular or not positive definite")]
    SingularMatrix,

    #[error("could not bracket the root of the trace equation")]
    NoBracket,

    #[error("regularization {rho} with N/n = {c_ratio} leaves no admissible loading factor")]
    InvalidRegime { rho: f64, c_ratio: f64 },

    #[error("loading factor diverges at rho = 1")]
    RhoOne,

    #[error("rho = 1 makes the estimate deterministic; standardization is undefined")]
    DegenerateRho,

    #[error("adaptive quadrature did not reach tolerance (estimated error {estimate:e})")]
    QuadratureFailure { estimate: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("quadratic form c'Xi c = {0:e} is negative")]
    NegativeVariance(f64),

    #[error("no samples")]
    EmptySamples,

    #[error("{fraction:.3} of empirical mass lies outside the reference support")]
    SupportMismatch { fraction: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("trial {index}: {source}")]
    Trial {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn in_trial(self, index: usize) -> Self {
        Error::Trial {
            index,
            source: Box::new(self),
        }
    }
}
