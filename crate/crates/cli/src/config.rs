use serde::{Deserialize, Serialize};
use uq_core::pce::min_moment_points;
use uq_core::{InputSpec, UncertainParam};

use crate::error::CliError;
use crate::models::ModelSpec;

pub const STUDY_SCHEMA: &str = "uq-study/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McConfig {
    pub samples: usize,
    pub seed: u64,
}

/// One uncertainty study: a model, its uncertain inputs, and the PC settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyConfig {
    pub schema: String,
    pub model: ModelSpec,
    pub uncertain: Vec<UncertainParam>,
    /// Total degree of the PC basis.
    pub p: usize,
    /// Gauss points per input dimension for the projection.
    pub n_g: usize,
    /// Gauss points per dimension for skewness/kurtosis; default `2p + 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moment_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monte_carlo: Option<McConfig>,
    /// Output labels to report; all when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<String>>,
    #[serde(default)]
    pub sobol: bool,
}

fn field_error(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("field '{field}': {msg}"))
}

impl StudyConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: StudyConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn moment_points(&self) -> usize {
        self.moment_points
            .unwrap_or_else(|| uq_core::pce::default_moment_points(self.p))
    }

    pub fn input_spec(&self) -> Result<InputSpec, CliError> {
        InputSpec::new(self.uncertain.clone()).map_err(|e| field_error("uncertain", e))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema != STUDY_SCHEMA {
            return Err(field_error(
                "schema",
                format!("unsupported '{}', expected '{STUDY_SCHEMA}'", self.schema),
            ));
        }
        self.model.validate()?;
        if self.uncertain.is_empty() {
            return Err(field_error("uncertain", "at least one uncertain parameter is required"));
        }
        self.input_spec()?;
        let names: Vec<&str> = self.uncertain.iter().map(|u| u.name.as_str()).collect();
        self.model.bind(&names)?;
        if self.n_g < self.p + 1 {
            return Err(field_error(
                "n_g",
                format!("must be at least p+1 = {}, got {}", self.p + 1, self.n_g),
            ));
        }
        if let Some(m) = self.moment_points {
            let min = min_moment_points(self.p);
            if m < min {
                return Err(field_error("moment_points", format!("must be at least 2p+1 = {min}, got {m}")));
            }
        }
        if self.sobol && self.p == 0 {
            return Err(field_error("sobol", "Sobol' indices need p ≥ 1"));
        }
        if let Some(mc) = self.monte_carlo {
            if mc.samples == 0 {
                return Err(field_error("monte_carlo.samples", "must be at least 1"));
            }
        }
        if let Some(outputs) = &self.outputs {
            let labels = self.model.output_labels();
            if let Some(bad) = outputs.iter().find(|o| !labels.contains(o)) {
                return Err(field_error(
                    "outputs",
                    format!("unknown output '{bad}' (model outputs: {})", labels.join(", ")),
                ));
            }
        }
        Ok(())
    }
}
