use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, UqError};
use crate::orthopoly::RecurrenceTable;
use crate::scalar::Scalar;

/// Exponents `(α_1..α_d)` of one multivariate basis polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(alpha: Vec<usize>) -> Self {
        Self(alpha)
    }

    pub fn zero(d: usize) -> Self {
        Self(vec![0; d])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// Bit `i` set when `α_i > 0`.
    pub fn support_mask(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// All multi-indices of total degree `s` in `d` variables, larger exponents
/// on earlier variables first.
fn compositions(d: usize, s: usize) -> Vec<Vec<usize>> {
    if d == 1 {
        return vec![vec![s]];
    }
    let mut out = Vec::new();
    for head in (0..=s).rev() {
        for mut tail in compositions(d - 1, s - head) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Graded-lexicographic total-degree index set: ascending total degree, and
/// within one degree `(s,0,..) > (s−1,1,..) > … > (0,..,s)`.
pub fn total_degree_indices(d: usize, p: usize) -> Vec<MultiIndex> {
    (0..=p)
        .flat_map(|s| compositions(d, s))
        .map(MultiIndex)
        .collect()
}

/// `C(p+d, d)`.
pub fn basis_size(d: usize, p: usize) -> usize {
    let mut c: u128 = 1;
    for i in 1..=d as u128 {
        c = c * (p as u128 + i) / i;
    }
    c as usize
}

/// Complete multivariate polynomial basis of total degree ≤ `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct TotalDegreeBasis<T> {
    degree: usize,
    indices: Vec<MultiIndex>,
    tables: Vec<RecurrenceTable<T>>,
}

impl<T: Scalar> TotalDegreeBasis<T> {
    pub fn dim(&self) -> usize {
        self.tables.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn tables(&self) -> &[RecurrenceTable<T>] {
        &self.tables
    }

    /// Position of `alpha` in the ordering, if it belongs to the basis.
    pub fn position(&self, alpha: &[usize]) -> Option<usize> {
        self.indices.iter().position(|m| m.as_slice() == alpha)
    }

    /// `∏_i ψ_{α_i}(ε_i)` for `α = indices[j]`, orthonormal factors.
    pub fn eval_basis_function(&self, j: usize, eps: &[T]) -> Result<T> {
        if j >= self.len() {
            return Err(UqError::OutOfRange {
                what: "basis function",
                index: j,
                max: self.len().saturating_sub(1),
            });
        }
        self.check_dim(eps)?;
        self.indices[j]
            .as_slice()
            .iter()
            .zip(&self.tables)
            .zip(eps)
            .try_fold(T::one(), |acc, ((&a, t), &x)| Ok(acc * t.eval_orthonormal(a, x)?))
    }

    /// Every basis function at `eps`, in basis order.
    pub fn eval_all(&self, eps: &[T]) -> Result<Vec<T>> {
        self.check_dim(eps)?;
        let univariate = self
            .tables
            .iter()
            .zip(eps)
            .map(|(t, &x)| t.eval_orthonormal_all(self.degree, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(self
            .indices
            .iter()
            .map(|m| {
                m.as_slice()
                    .iter()
                    .zip(&univariate)
                    .fold(T::one(), |acc, (&a, vals)| acc * vals[a])
            })
            .collect())
    }

    fn check_dim(&self, eps: &[T]) -> Result<()> {
        if eps.len() != self.dim() {
            return Err(UqError::InvalidArgument(format!(
                "germ vector has {} components, basis has dimension {}",
                eps.len(),
                self.dim()
            )));
        }
        Ok(())
    }
}

/// Builds the degree-`p` total-degree basis over one table per dimension.
pub fn enumerate_basis<T: Scalar>(
    p: usize,
    tables: Vec<RecurrenceTable<T>>,
) -> Result<TotalDegreeBasis<T>> {
    let d = tables.len();
    if d == 0 {
        return Err(UqError::InvalidArgument("basis dimension must be ≥ 1".into()));
    }
    if d > 32 {
        return Err(UqError::InvalidArgument(format!(
            "basis dimension {d} exceeds 32"
        )));
    }
    if let Some((i, t)) = tables
        .iter()
        .enumerate()
        .find(|(_, t)| t.max_orthonormal_degree() < p)
    {
        return Err(UqError::InvalidArgument(format!(
            "table for dimension {i} normalizes only up to degree {}, basis needs {p}",
            t.max_orthonormal_degree()
        )));
    }
    Ok(TotalDegreeBasis {
        degree: p,
        indices: total_degree_indices(d, p),
        tables,
    })
}
