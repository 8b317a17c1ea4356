//! Registry of queueing models addressable from study configs.

use serde::{Deserialize, Serialize};
use uq_core::queueing::{mg1n_matrix, mm1_generator, stationary_ctmc, stationary_dtmc};
use uq_core::{MG1NParams, MM1ThresholdParams, Model, Real, ServiceDistribution};

use crate::error::CliError;

/// A model and its fixed parameter values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelSpec {
    /// M/G/1/N with breakdowns at service start; outputs `pi_0..pi_{N-1}`.
    Mg1n {
        #[serde(rename = "N")]
        capacity: usize,
        lambda: Real,
        r: Real,
        theta: Real,
        service: ServiceDistribution,
    },
    /// M/M/1/N with breakdowns and threshold recovery; outputs `pi_{s}_{n}`.
    Mm1Threshold {
        #[serde(rename = "N")]
        capacity: usize,
        q: usize,
        lambda: Real,
        mu: Real,
        alpha: Real,
        beta: Real,
    },
}

pub const MODEL_NAMES: [&str; 2] = ["mg1n", "mm1-threshold"];

impl ModelSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::Mg1n { .. } => MODEL_NAMES[0],
            ModelSpec::Mm1Threshold { .. } => MODEL_NAMES[1],
        }
    }

    /// Real-valued parameters that may be declared uncertain.
    pub fn parameter_names(&self) -> Vec<&'static str> {
        match self {
            ModelSpec::Mg1n { service, .. } => {
                let mut names = vec!["lambda", "r", "theta"];
                names.extend(match service {
                    ServiceDistribution::GeneralizedErlang2 { .. } => &["mu1", "mu2"][..],
                    ServiceDistribution::Hyperexponential2 { .. } => &["gamma", "mu1", "mu2"][..],
                    ServiceDistribution::Exponential { .. } => &["mu"][..],
                });
                names
            }
            ModelSpec::Mm1Threshold { .. } => vec!["lambda", "mu", "alpha", "beta"],
        }
    }

    fn set(&mut self, param: &str, value: Real) {
        match self {
            ModelSpec::Mg1n {
                lambda, r, theta, service, ..
            } => match (param, service) {
                ("lambda", _) => *lambda = value,
                ("r", _) => *r = value,
                ("theta", _) => *theta = value,
                ("mu1", ServiceDistribution::GeneralizedErlang2 { mu1, .. })
                | ("mu1", ServiceDistribution::Hyperexponential2 { mu1, .. }) => *mu1 = value,
                ("mu2", ServiceDistribution::GeneralizedErlang2 { mu2, .. })
                | ("mu2", ServiceDistribution::Hyperexponential2 { mu2, .. }) => *mu2 = value,
                ("gamma", ServiceDistribution::Hyperexponential2 { gamma, .. }) => *gamma = value,
                ("mu", ServiceDistribution::Exponential { mu }) => *mu = value,
                _ => unreachable!("parameter names are validated at bind time"),
            },
            ModelSpec::Mm1Threshold {
                lambda, mu, alpha, beta, ..
            } => match param {
                "lambda" => *lambda = value,
                "mu" => *mu = value,
                "alpha" => *alpha = value,
                "beta" => *beta = value,
                _ => unreachable!("parameter names are validated at bind time"),
            },
        }
    }

    /// Validates the fixed values by building the chain once.
    pub fn validate(&self) -> Result<(), CliError> {
        self.solve()
            .map(|_| ())
            .map_err(|e| CliError::Validation(format!("model: {e}")))
    }

    pub fn output_labels(&self) -> Vec<String> {
        match self {
            ModelSpec::Mg1n { capacity, .. } => (0..*capacity).map(|i| format!("pi_{i}")).collect(),
            ModelSpec::Mm1Threshold { capacity, .. } => {
                let mut labels = vec![uq_core::queueing::mm1_state_label(0, 0)];
                for n in 1..=*capacity {
                    labels.push(uq_core::queueing::mm1_state_label(n, 0));
                    labels.push(uq_core::queueing::mm1_state_label(n, 1));
                }
                labels
            }
        }
    }

    /// Stationary distribution at the current parameter values.
    pub fn solve(&self) -> uq_core::Result<Vec<Real>> {
        match *self {
            ModelSpec::Mg1n {
                capacity,
                lambda,
                r,
                theta,
                service,
            } => {
                let params = MG1NParams {
                    capacity,
                    lambda,
                    r,
                    theta,
                    service,
                };
                Ok(stationary_dtmc(&mg1n_matrix(&params)?)?.probabilities)
            }
            ModelSpec::Mm1Threshold {
                capacity,
                q,
                lambda,
                mu,
                alpha,
                beta,
            } => {
                let params = MM1ThresholdParams {
                    capacity,
                    threshold: q,
                    lambda,
                    mu,
                    alpha,
                    beta,
                };
                Ok(stationary_ctmc(&mm1_generator(&params)?)?.probabilities)
            }
        }
    }

    /// Binds the uncertain parameter names, in input order.
    pub fn bind(&self, uncertain: &[&str]) -> Result<BoundModel, CliError> {
        let known = self.parameter_names();
        for name in uncertain {
            if !known.contains(name) {
                return Err(CliError::Validation(format!(
                    "uncertain parameter '{name}' is not a parameter of model '{}' (expected one of: {})",
                    self.name(),
                    known.join(", ")
                )));
            }
        }
        Ok(BoundModel {
            base: self.clone(),
            names: uncertain.iter().map(|s| s.to_string()).collect(),
            labels: self.output_labels(),
        })
    }
}

/// A model with some parameters driven by the uncertain inputs.
#[derive(Debug, Clone)]
pub struct BoundModel {
    base: ModelSpec,
    names: Vec<String>,
    labels: Vec<String>,
}

impl Model<Real> for BoundModel {
    fn output_labels(&self) -> Vec<String> {
        self.labels.clone()
    }

    fn evaluate(&self, theta: &[Real]) -> uq_core::Result<Vec<Real>> {
        let mut spec = self.base.clone();
        for (name, &v) in self.names.iter().zip(theta) {
            spec.set(name, v);
        }
        spec.solve()
    }
}
