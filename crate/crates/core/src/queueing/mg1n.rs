use serde::{Deserialize, Serialize};

use super::linalg::SquareMatrix;
use crate::error::{Result, UqError};
use crate::scalar::Scalar;

/// Service-time law of the M/G/1/N queue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
#[serde(bound = "T: Scalar")]
pub enum ServiceDistribution<T> {
    /// Density `C (e^{−μ1 x} − e^{−μ2 x})`, `C = μ1 μ2 / (μ2 − μ1)`.
    GeneralizedErlang2 { mu1: T, mu2: T },
    /// Density `γ μ1 e^{−μ1 x} + (1 − γ) μ2 e^{−μ2 x}`.
    Hyperexponential2 { gamma: T, mu1: T, mu2: T },
    Exponential { mu: T },
}

impl<T: Scalar> ServiceDistribution<T> {
    pub fn validate(&self) -> Result<()> {
        let pos = |name: &str, v: T| {
            if v > T::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(UqError::InvalidArgument(format!(
                    "service rate {name} must be positive, got {v}"
                )))
            }
        };
        match *self {
            ServiceDistribution::GeneralizedErlang2 { mu1, mu2 } => {
                pos("mu1", mu1)?;
                pos("mu2", mu2)?;
                if mu1 == mu2 {
                    return Err(UqError::InvalidArgument(
                        "generalized Erlang-2 needs mu1 != mu2 (density degenerate)".into(),
                    ));
                }
                Ok(())
            }
            ServiceDistribution::Hyperexponential2 { gamma, mu1, mu2 } => {
                pos("mu1", mu1)?;
                pos("mu2", mu2)?;
                if !(gamma > T::zero() && gamma < T::one()) {
                    return Err(UqError::InvalidArgument(format!(
                        "hyperexponential mixing weight must lie in (0,1), got {gamma}"
                    )));
                }
                Ok(())
            }
            ServiceDistribution::Exponential { mu } => pos("mu", mu),
        }
    }

    /// Service density at `x ≥ 0`.
    pub fn density(&self, x: T) -> T {
        match *self {
            ServiceDistribution::GeneralizedErlang2 { mu1, mu2 } => {
                mu1 * mu2 / (mu2 - mu1) * ((-mu1 * x).exp() - (-mu2 * x).exp())
            }
            ServiceDistribution::Hyperexponential2 { gamma, mu1, mu2 } => {
                gamma * mu1 * (-mu1 * x).exp() + (T::one() - gamma) * mu2 * (-mu2 * x).exp()
            }
            ServiceDistribution::Exponential { mu } => mu * (-mu * x).exp(),
        }
    }

    /// `P(k Poisson(λ) arrivals during one service) = ∫ e^{−λx}(λx)^k/k! dF(x)`.
    pub fn poisson_mixture(&self, lambda: T, k: usize) -> T {
        match *self {
            ServiceDistribution::GeneralizedErlang2 { mu1, mu2 } => {
                let e1 = exponential_mixture(lambda, mu1, k);
                let e2 = exponential_mixture(lambda, mu2, k);
                (mu2 * e1 - mu1 * e2) / (mu2 - mu1)
            }
            ServiceDistribution::Hyperexponential2 { gamma, mu1, mu2 } => {
                gamma * exponential_mixture(lambda, mu1, k)
                    + (T::one() - gamma) * exponential_mixture(lambda, mu2, k)
            }
            ServiceDistribution::Exponential { mu } => exponential_mixture(lambda, mu, k),
        }
    }
}

/// `∫ e^{−λx}(λx)^k/k! μ e^{−μx} dx = μ/(λ+μ) · (λ/(λ+μ))^k`.
fn exponential_mixture<T: Scalar>(lambda: T, mu: T, k: usize) -> T {
    let s = lambda + mu;
    mu / s * (lambda / s).powi(k as i32)
}

/// Parameters of the M/G/1/N queue with breakdowns at service start.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MG1NParams<T> {
    /// Capacity, including the customer in service.
    pub capacity: usize,
    pub lambda: T,
    /// Repair rate.
    pub r: T,
    /// Breakdown probability at the beginning of a service.
    pub theta: T,
    pub service: ServiceDistribution<T>,
}

impl<T: Scalar> MG1NParams<T> {
    pub fn validate(&self) -> Result<()> {
        if self.capacity < 2 {
            return Err(UqError::InvalidArgument(format!(
                "capacity must be at least 2, got {}",
                self.capacity
            )));
        }
        if !(self.lambda > T::zero() && self.lambda.is_finite()) {
            return Err(UqError::InvalidArgument(format!(
                "arrival rate must be positive, got {}",
                self.lambda
            )));
        }
        if !(self.r > T::zero() && self.r.is_finite()) {
            return Err(UqError::InvalidArgument(format!(
                "repair rate must be positive, got {}",
                self.r
            )));
        }
        if !(self.theta >= T::zero() && self.theta <= T::one()) {
            return Err(UqError::InvalidArgument(format!(
                "breakdown probability must lie in [0,1], got {}",
                self.theta
            )));
        }
        self.service.validate()
    }

    pub fn state_labels(&self) -> Vec<String> {
        (0..self.capacity).map(|i| format!("pi_{i}")).collect()
    }
}

/// `a_0..a_{N−2}`: probability of `k` arrivals between consecutive embedded
/// epochs, mixing a service period (weight `θ`) and a repair period
/// (weight `1 − θ`).
pub fn a_coefficients<T: Scalar>(params: &MG1NParams<T>) -> Result<Vec<T>> {
    params.validate()?;
    let lambda = params.lambda;
    let r = params.r;
    let repair_p = r / (r + lambda);
    let repair_q = lambda / (lambda + r);
    Ok((0..params.capacity - 1)
        .map(|k| {
            params.theta * params.service.poisson_mixture(lambda, k)
                + (T::one() - params.theta) * repair_p * repair_q.powi(k as i32)
        })
        .collect())
}

/// Transition matrix Ξ of the embedded chain.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix<T> {
    matrix: SquareMatrix<T>,
    labels: Vec<String>,
}

impl<T: Scalar> StochasticMatrix<T> {
    /// Checks nonnegativity and unit row sums (within 1e-12).
    pub fn new(matrix: SquareMatrix<T>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != matrix.size() {
            return Err(UqError::InvalidArgument(format!(
                "{} labels for {} states",
                labels.len(),
                matrix.size()
            )));
        }
        let tol = T::lit(1e-12).max(T::epsilon() * T::lit(64.0));
        for (i, row) in matrix.rows().enumerate() {
            if row.iter().any(|&x| !(x >= T::zero())) {
                return Err(UqError::InvalidArgument(format!(
                    "row {i} has a negative or NaN entry"
                )));
            }
            let s: T = row.iter().copied().sum();
            if (s - T::one()).abs() > tol {
                return Err(UqError::InvalidArgument(format!(
                    "row {i} sums to {s}, not 1"
                )));
            }
        }
        Ok(Self { matrix, labels })
    }

    pub fn matrix(&self) -> &SquareMatrix<T> {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }
}

/// Builds Ξ: rows 0 and 1 are `(a_0, …, a_{N−2}, 1 − Σ)`, row `i ≥ 2` starts
/// with `a_0` in column `i − 1`, and the last column closes each row to 1.
pub fn mg1n_matrix<T: Scalar>(params: &MG1NParams<T>) -> Result<StochasticMatrix<T>> {
    let a = a_coefficients(params)?;
    let n = params.capacity;
    let mut m = SquareMatrix::zeros(n);
    for i in 0..n {
        let start = i.saturating_sub(1);
        let mut sum = T::zero();
        for j in start..n - 1 {
            let v = a[j - start];
            m.set(i, j, v);
            sum = sum + v;
        }
        let tail = T::one() - sum;
        if tail < -T::lit(1e-12) {
            return Err(UqError::Internal(format!(
                "row {i}: a-coefficients sum to {sum} > 1"
            )));
        }
        m.set(i, n - 1, tail.max(T::zero()));
    }
    StochasticMatrix::new(m, params.state_labels())
        .map_err(|e| UqError::Internal(format!("transition matrix: {e}")))
}
