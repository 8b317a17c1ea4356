use serde::{Deserialize, Serialize};

use super::linalg::SquareMatrix;
use crate::error::{Result, UqError};
use crate::scalar::Scalar;

/// M/M/1/N queue with breakdowns and threshold-based recovery.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MM1ThresholdParams<T> {
    pub capacity: usize,
    /// Repair of a broken server starts once the queue holds at least this many customers.
    pub threshold: usize,
    pub lambda: T,
    pub mu: T,
    /// Breakdown rate while serving.
    pub alpha: T,
    /// Repair rate.
    pub beta: T,
}

impl<T: Scalar> MM1ThresholdParams<T> {
    pub fn validate(&self) -> Result<()> {
        if self.capacity < 1 {
            return Err(UqError::InvalidArgument("capacity must be at least 1".into()));
        }
        if !(1..=self.capacity).contains(&self.threshold) {
            return Err(UqError::InvalidArgument(format!(
                "threshold must lie in 1..={}, got {}",
                self.capacity, self.threshold
            )));
        }
        for (name, v) in [
            ("lambda", self.lambda),
            ("mu", self.mu),
            ("alpha", self.alpha),
            ("beta", self.beta),
        ] {
            if !(v > T::zero() && v.is_finite()) {
                return Err(UqError::InvalidArgument(format!(
                    "rate {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn n_states(&self) -> usize {
        2 * self.capacity + 1
    }

    pub fn state_labels(&self) -> Vec<String> {
        let mut out = vec![mm1_state_label(0, 0)];
        for n in 1..=self.capacity {
            out.push(mm1_state_label(n, 0));
            out.push(mm1_state_label(n, 1));
        }
        out
    }
}

/// Flat index of state `(n, s)` in level order `(0,0),(1,0),(1,1),(2,0),…`.
pub fn mm1_state_index(n: usize, server_down: usize) -> usize {
    if n == 0 {
        0
    } else {
        2 * n - 1 + server_down
    }
}

/// `pi_{s}_{n}`: server state first, then number of customers.
pub fn mm1_state_label(n: usize, server_down: usize) -> String {
    format!("pi_{server_down}_{n}")
}

/// Infinitesimal generator with labeled states.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrix<T> {
    matrix: SquareMatrix<T>,
    labels: Vec<String>,
}

impl<T: Scalar> GeneratorMatrix<T> {
    /// Checks nonnegative off-diagonal entries and zero row sums.
    pub fn new(matrix: SquareMatrix<T>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != matrix.size() {
            return Err(UqError::InvalidArgument(format!(
                "{} labels for {} states",
                labels.len(),
                matrix.size()
            )));
        }
        let tol = T::lit(1e-12).max(T::epsilon() * T::lit(64.0)) * matrix.max_abs().max(T::one());
        for (i, row) in matrix.rows().enumerate() {
            if row
                .iter()
                .enumerate()
                .any(|(j, &x)| j != i && !(x >= T::zero()))
            {
                return Err(UqError::InvalidArgument(format!(
                    "row {i} has a negative off-diagonal rate"
                )));
            }
            let s: T = row.iter().copied().sum();
            if s.abs() > tol {
                return Err(UqError::InvalidArgument(format!(
                    "row {i} sums to {s}, not 0"
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

/// Generator built directly from the transition rates.
pub fn mm1_generator<T: Scalar>(params: &MM1ThresholdParams<T>) -> Result<GeneratorMatrix<T>> {
    params.validate()?;
    let cap = params.capacity;
    let mut q = SquareMatrix::zeros(params.n_states());
    let mut add = |from: usize, to: usize, rate: T| {
        q.set(from, to, q.get(from, to) + rate);
    };
    for n in 0..=cap {
        let up = mm1_state_index(n, 0);
        if n < cap {
            add(up, mm1_state_index(n + 1, 0), params.lambda);
        }
        if n >= 1 {
            let down = mm1_state_index(n, 1);
            add(up, mm1_state_index(n - 1, 0), params.mu);
            add(up, down, params.alpha);
            if n < cap {
                add(down, mm1_state_index(n + 1, 1), params.lambda);
            }
            if n >= params.threshold {
                add(down, up, params.beta);
            }
        }
    }
    for i in 0..q.size() {
        let out: T = (0..q.size()).filter(|&j| j != i).map(|j| q.get(i, j)).sum();
        q.set(i, i, -out);
    }
    GeneratorMatrix::new(q, params.state_labels())
}
