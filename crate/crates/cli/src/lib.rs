//! Front end for the uncertainty-quantification studies: model registry,
//! study configs, built-in table reproduction and CSV output.

pub mod builtin;
pub mod config;
pub mod error;
pub mod models;
pub mod study;
pub mod table;

pub use builtin::{density, reproduce, BuiltinStudy, TABLE_IDS};
pub use config::{McConfig, StudyConfig, STUDY_SCHEMA};
pub use error::CliError;
pub use models::ModelSpec;
pub use study::{execute, StudyOutcome};
pub use table::ResultTable;

/// Environment variable capping model-evaluation threads.
pub const THREADS_ENV: &str = "UQ_THREADS";

/// Sizes the global rayon pool from `UQ_THREADS` when set.
pub fn configure_threads(value: Option<&str>) -> Result<(), CliError> {
    let Some(v) = value else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Validation(format!("{THREADS_ENV} must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Validation(format!("{THREADS_ENV}: {e}")))
}
