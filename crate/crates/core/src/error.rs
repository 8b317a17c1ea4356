use thiserror::Error;

#[derive(Debug, Error)]
pub enum UqError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} index {index} out of range (max {max})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("custom weight has no closed-form recurrence; use stieltjes_recurrence")]
    CustomFamily,

    #[error("weight not a valid positive measure at requested degree {degree}")]
    InvalidMeasure { degree: usize },

    #[error("eigenvalue iteration did not converge: {0}")]
    NoConvergence(String),

    #[error("non-finite value at node {node:?}")]
    NonFinite { node: Vec<f64> },

    #[error("model evaluation failed at {location}: {message}")]
    ModelFailure { location: String, message: String },

    #[error("germ/table mismatch in dimension {dim}: {detail}")]
    GermMismatch { dim: usize, detail: String },

    #[error("chain not unichain or numerically degenerate")]
    Singular,

    #[error("degenerate output, Sobol' undefined")]
    DegenerateSobol,

    #[error("degenerate sample")]
    DegenerateSample,

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("serialization: {0}")]
    Serialization(#[from] serde_json::Error),
}

pub type Result<T, E = UqError> = std::result::Result<T, E>;
