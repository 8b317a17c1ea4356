use uq_core::UqError;

/// Exit status for validation problems (bad config, unknown table id, …).
pub const EXIT_VALIDATION: i32 = 2;
/// Exit status for numerical failures (singular chain, model failure, …).
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_OTHER: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("numerical failure: {0}")]
    Numerical(UqError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io(_) | CliError::Csv(_) => EXIT_OTHER,
        }
    }
}

impl From<UqError> for CliError {
    fn from(e: UqError) -> Self {
        match e {
            UqError::InvalidArgument(_)
            | UqError::OutOfRange { .. }
            | UqError::CustomFamily
            | UqError::GermMismatch { .. }
            | UqError::Serialization(_) => CliError::Validation(e.to_string()),
            other => CliError::Numerical(other),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Validation(format!("json: {e}"))
    }
}
