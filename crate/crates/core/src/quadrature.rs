//! Gauss rules from recurrence tables (Golub–Welsch) and tensor-product grids.

use rayon::prelude::*;

use crate::error::{Result, UqError};
use crate::orthopoly::{RecurrenceTable, StandardFamily};
use crate::scalar::{to_f64_vec, Scalar};

/// Largest dimension a tensor grid will be built for.
pub const MAX_GRID_DIM: usize = 8;

const MAX_QL_SWEEPS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule1D<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
    family: Option<StandardFamily>,
}

impl<T: Scalar> QuadratureRule1D<T> {
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Family of the table that produced the rule, when it was a standard one.
    pub fn family(&self) -> Option<StandardFamily> {
        self.family
    }

    pub fn integrate_1d(&self, f: impl Fn(T) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
    }
}

/// `n_g`-point Gauss rule for the weight behind `rt`.
///
/// Nodes are the eigenvalues of the symmetric Jacobi matrix with diagonal `a`
/// and off-diagonal `√b`; weights are `m0` times the squared first components
/// of the normalized eigenvectors.
pub fn gauss_rule<T: Scalar>(rt: &RecurrenceTable<T>, n_g: usize) -> Result<QuadratureRule1D<T>> {
    if n_g == 0 || n_g > rt.max_degree() {
        return Err(UqError::OutOfRange {
            what: "quadrature size",
            index: n_g,
            max: rt.max_degree(),
        });
    }
    let mut diag = rt.a()[..n_g].to_vec();
    let mut off: Vec<T> = rt.b()[..n_g - 1].iter().map(|b| b.sqrt()).collect();
    off.push(T::zero());
    let mut first = vec![T::zero(); n_g];
    first[0] = T::one();
    tridiagonal_ql(&mut diag, &mut off, &mut first)?;

    let mut pairs: Vec<(T, T)> = diag
        .into_iter()
        .zip(first)
        .map(|(x, z)| (x, rt.m0() * z * z))
        .collect();
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).expect("finite eigenvalues"));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule1D {
        nodes,
        weights,
        family: rt.family(),
    })
}

/// Implicit-shift QL on a symmetric tridiagonal matrix.
///
/// On entry `diag` holds the diagonal, `off[i]` the entry `(i, i+1)` with
/// `off[n−1] = 0`, and `first` the first row of the initial eigenvector basis.
/// On exit `diag` holds eigenvalues and `first[i]` the first component of the
/// i-th eigenvector.
fn tridiagonal_ql<T: Scalar>(diag: &mut [T], off: &mut [T], first: &mut [T]) -> Result<()> {
    let n = diag.len();
    let two = T::lit(2.0);
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if sweeps == MAX_QL_SWEEPS {
                return Err(UqError::NoConvergence(format!(
                    "eigenvalue {l} of {n}x{n} Jacobi matrix after {MAX_QL_SWEEPS} sweeps \
                     (residual off-diagonal {})",
                    off[l]
                )));
            }
            sweeps += 1;

            let mut g = (diag[l + 1] - diag[l]) / (two * off[l]);
            let mut r = g.hypot(T::one());
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == T::zero() {
                    diag[i + 1] = diag[i + 1] - p;
                    off[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + two * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;

                let zf = first[i + 1];
                first[i + 1] = s * first[i] + c * zf;
                first[i] = c * first[i] - s * zf;
            }
            if underflow {
                continue;
            }
            diag[l] = diag[l] - p;
            off[l] = g;
            off[m] = T::zero();
        }
    }
    Ok(())
}

/// Full tensor product of univariate rules; the last dimension varies fastest.
#[derive(Debug, Clone)]
pub struct TensorGrid<T> {
    rules: Vec<QuadratureRule1D<T>>,
    len: usize,
}

impl<T: Scalar> TensorGrid<T> {
    pub fn new(rules: Vec<QuadratureRule1D<T>>) -> Result<Self> {
        if rules.is_empty() {
            return Err(UqError::InvalidArgument(
                "tensor grid needs at least one rule".into(),
            ));
        }
        if rules.len() > MAX_GRID_DIM {
            return Err(UqError::InvalidArgument(format!(
                "tensor grid dimension {} exceeds {MAX_GRID_DIM}",
                rules.len()
            )));
        }
        if rules.iter().any(|r| r.is_empty()) {
            return Err(UqError::InvalidArgument("empty quadrature rule".into()));
        }
        let len = rules.iter().map(|r| r.len()).product();
        Ok(Self { rules, len })
    }

    pub fn rules(&self) -> &[QuadratureRule1D<T>] {
        &self.rules
    }

    pub fn dim(&self) -> usize {
        self.rules.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Node vector and product weight of the grid point with flat index `idx`.
    pub fn point(&self, idx: usize) -> (Vec<T>, T) {
        debug_assert!(idx < self.len);
        let mut node = vec![T::zero(); self.dim()];
        let mut weight = T::one();
        let mut rem = idx;
        for (k, rule) in self.rules.iter().enumerate().rev() {
            let i = rem % rule.len();
            rem /= rule.len();
            node[k] = rule.nodes[i];
            weight = weight * rule.weights[i];
        }
        (node, weight)
    }

    pub fn points(&self) -> impl Iterator<Item = (Vec<T>, T)> + '_ {
        (0..self.len).map(move |i| self.point(i))
    }

    pub fn total_weight(&self) -> T {
        self.points().fold(T::zero(), |acc, (_, w)| acc + w)
    }

    /// Evaluates `f` at every grid point, possibly concurrently, returning the
    /// results in grid order.
    pub fn evaluate<R, F>(&self, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(&[T]) -> R + Sync,
    {
        (0..self.len)
            .into_par_iter()
            .map(|i| f(&self.point(i).0))
            .collect()
    }
}

/// `Σ weight · f(node)` componentwise, reduced sequentially in grid order.
pub fn integrate<T, F>(f: F, grid: &TensorGrid<T>) -> Result<Vec<T>>
where
    T: Scalar,
    F: Fn(&[T]) -> Vec<T> + Sync,
{
    let values = grid.evaluate(&f);
    let mut acc: Option<Vec<T>> = None;
    for (i, v) in values.into_iter().enumerate() {
        let (node, w) = grid.point(i);
        if v.iter().any(|x| !x.is_finite()) {
            return Err(UqError::NonFinite {
                node: to_f64_vec(&node),
            });
        }
        match acc.as_mut() {
            None => acc = Some(v.into_iter().map(|x| w * x).collect()),
            Some(sum) => {
                if sum.len() != v.len() {
                    return Err(UqError::InvalidArgument(format!(
                        "integrand output length changed from {} to {}",
                        sum.len(),
                        v.len()
                    )));
                }
                for (s, x) in sum.iter_mut().zip(v) {
                    *s = *s + w * x;
                }
            }
        }
    }
    Ok(acc.unwrap_or_default())
}
