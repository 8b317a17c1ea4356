use serde::{Deserialize, Serialize};

use crate::error::{Result, UqError};
use crate::orthopoly::{standard_table, RecurrenceTable, StandardFamily};
use crate::scalar::Scalar;

/// Distribution of a standardized germ ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Germ {
    /// Uniform on [−1, 1]; paired with Legendre polynomials.
    #[serde(alias = "uniform-minus1-to1")]
    Uniform,
    /// Standard normal; paired with probabilists' Hermite polynomials.
    #[serde(alias = "standard-normal")]
    Normal,
}

impl Germ {
    pub fn family(self) -> StandardFamily {
        match self {
            Germ::Uniform => StandardFamily::LegendreUniform,
            Germ::Normal => StandardFamily::HermiteProbabilists,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Germ::Uniform => "uniform",
            Germ::Normal => "normal",
        }
    }
}

/// One uncertain parameter `θ = mean + sigma · ε`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UncertainParam<T> {
    pub name: String,
    pub germ: Germ,
    pub mean: T,
    pub sigma: T,
    /// Mapped values must stay strictly positive (rates, probabilities).
    #[serde(default = "default_positive")]
    pub positive: bool,
}

fn default_positive() -> bool {
    true
}

impl<T: Scalar> UncertainParam<T> {
    pub fn new(name: impl Into<String>, germ: Germ, mean: T, sigma: T) -> Self {
        Self {
            name: name.into(),
            germ,
            mean,
            sigma,
            positive: true,
        }
    }

    pub fn uniform(name: impl Into<String>, mean: T, sigma: T) -> Self {
        Self::new(name, Germ::Uniform, mean, sigma)
    }

    pub fn normal(name: impl Into<String>, mean: T, sigma: T) -> Self {
        Self::new(name, Germ::Normal, mean, sigma)
    }

    /// Lifts the positivity requirement on mapped values.
    pub fn allow_nonpositive(mut self) -> Self {
        self.positive = false;
        self
    }

    pub fn map(&self, eps: T) -> T {
        self.mean + self.sigma * eps
    }
}

/// Independent uncertain inputs, in the order the model expects them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<UncertainParam<T>>", into = "Vec<UncertainParam<T>>")]
#[serde(bound = "T: Scalar")]
pub struct InputSpec<T> {
    params: Vec<UncertainParam<T>>,
}

impl<T: Scalar> InputSpec<T> {
    pub fn new(params: Vec<UncertainParam<T>>) -> Result<Self> {
        if params.is_empty() {
            return Err(UqError::InvalidArgument(
                "input spec needs at least one uncertain parameter".into(),
            ));
        }
        for (i, p) in params.iter().enumerate() {
            if !(p.sigma > T::zero() && p.sigma.is_finite()) {
                return Err(UqError::InvalidArgument(format!(
                    "parameter '{}': sigma must be positive, got {}",
                    p.name, p.sigma
                )));
            }
            if !p.mean.is_finite() {
                return Err(UqError::InvalidArgument(format!(
                    "parameter '{}': mean must be finite",
                    p.name
                )));
            }
            if params[..i].iter().any(|q| q.name == p.name) {
                return Err(UqError::InvalidArgument(format!(
                    "duplicate parameter name '{}'",
                    p.name
                )));
            }
        }
        Ok(Self { params })
    }

    pub fn params(&self) -> &[UncertainParam<T>] {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.params.len()
    }

    pub fn names(&self) -> Vec<&str> {
        self.params.iter().map(|p| p.name.as_str()).collect()
    }

    /// Physical parameter vector for germ vector `eps`.
    pub fn map(&self, eps: &[T]) -> Vec<T> {
        self.params.iter().zip(eps).map(|(p, &e)| p.map(e)).collect()
    }

    /// One standard recurrence table per dimension with `n` steps.
    pub fn tables(&self, n: usize) -> Result<Vec<RecurrenceTable<T>>> {
        self.params
            .iter()
            .map(|p| standard_table(p.germ.family(), n))
            .collect()
    }
}

impl<T: Scalar> TryFrom<Vec<UncertainParam<T>>> for InputSpec<T> {
    type Error = UqError;

    fn try_from(v: Vec<UncertainParam<T>>) -> Result<Self> {
        Self::new(v)
    }
}

impl<T> From<InputSpec<T>> for Vec<UncertainParam<T>> {
    fn from(s: InputSpec<T>) -> Self {
        s.params
    }
}
