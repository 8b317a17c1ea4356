use super::linalg::SquareMatrix;
use super::mg1n::StochasticMatrix;
use super::mm1::GeneratorMatrix;
use crate::error::{Result, UqError};
use crate::scalar::Scalar;

/// Normalized stationary probability vector with state labels.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDist<T> {
    pub labels: Vec<String>,
    pub probabilities: Vec<T>,
}

impl<T: Scalar> StationaryDist<T> {
    pub fn get(&self, label: &str) -> Option<T> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.probabilities[i])
    }
}

fn negativity_tol<T: Scalar>() -> T {
    T::lit(1e-14).max(T::epsilon() * T::lit(64.0))
}

fn residual_tol<T: Scalar>() -> T {
    T::lit(1e-10).max(T::epsilon() * T::lit(4096.0))
}

/// Solves `Aᵀ π = 0` with the last equation replaced by `Σ π = 1`.
fn solve_replaced<T: Scalar>(a: &SquareMatrix<T>) -> Result<Vec<T>> {
    let n = a.size();
    let mut sys = a.transpose();
    for j in 0..n {
        sys.set(n - 1, j, T::one());
    }
    let mut rhs = vec![T::zero(); n];
    rhs[n - 1] = T::one();
    let mut pi = sys.solve(&rhs)?;

    let tol = negativity_tol::<T>();
    if let Some(x) = pi.iter().find(|&&x| x < -tol || !x.is_finite()) {
        return Err(UqError::Internal(format!(
            "stationary component {x} is negative beyond roundoff"
        )));
    }
    if pi.iter().any(|&x| x < T::zero()) {
        for x in pi.iter_mut() {
            *x = x.max(T::zero());
        }
        let s: T = pi.iter().copied().sum();
        for x in pi.iter_mut() {
            *x = *x / s;
        }
    }
    Ok(pi)
}

/// Stationary distribution of a unichain DTMC, `π Ξ = π`, `Σ π = 1`.
pub fn stationary_dtmc<T: Scalar>(p: &StochasticMatrix<T>) -> Result<StationaryDist<T>> {
    let m = p.matrix();
    let n = m.size();
    if n == 0 {
        return Err(UqError::InvalidArgument("empty transition matrix".into()));
    }
    let mut shifted = m.clone();
    for i in 0..n {
        shifted.set(i, i, shifted.get(i, i) - T::one());
    }
    let pi = solve_replaced(&shifted)?;
    let residual = m
        .left_mul(&pi)
        .iter()
        .zip(&pi)
        .fold(T::zero(), |r, (a, b)| r.max((*a - *b).abs()));
    if residual > residual_tol() {
        return Err(UqError::Internal(format!(
            "stationary residual {residual} exceeds tolerance"
        )));
    }
    Ok(StationaryDist {
        labels: p.labels().to_vec(),
        probabilities: pi,
    })
}

/// Stationary distribution of an irreducible CTMC, `π Q = 0`, `Σ π = 1`.
pub fn stationary_ctmc<T: Scalar>(q: &GeneratorMatrix<T>) -> Result<StationaryDist<T>> {
    let m = q.matrix();
    if m.size() == 0 {
        return Err(UqError::InvalidArgument("empty generator".into()));
    }
    let pi = solve_replaced(m)?;
    let residual = m.left_mul(&pi).iter().fold(T::zero(), |r, x| r.max(x.abs()));
    if residual > residual_tol::<T>() * m.max_abs().max(T::one()) {
        return Err(UqError::Internal(format!(
            "stationary residual {residual} exceeds tolerance"
        )));
    }
    Ok(StationaryDist {
        labels: q.labels().to_vec(),
        probabilities: pi,
    })
}
