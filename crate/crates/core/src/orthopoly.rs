//! Univariate orthogonal polynomial families defined by three-term recurrences.
//!
//! Polynomials are stored in monic form,
//!
//! ```text
//! Ψ_{k+1}(x) = (x − a_k) Ψ_k(x) − b_k Ψ_{k−1}(x),   Ψ_0 = 1, Ψ_{−1} = 0,
//! ```
//!
//! and normalized on the fly with `h_k² = m0 · b_1 ⋯ b_k`. A table built with
//! `n` recurrence steps evaluates monic polynomials up to degree `n`, orthonormal
//! polynomials up to degree `n − 1`, and feeds Gauss rules of up to `n` points.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Result, UqError};
use crate::scalar::Scalar;

/// Discretization resolution used when none is given for a custom weight.
pub const DEFAULT_STIELTJES_RESOLUTION: usize = 128;

/// Weight function handle for data-driven families.
pub type WeightFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Standard families with closed-form recurrences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StandardFamily {
    /// Probabilists' Hermite, weight = standard normal density.
    HermiteProbabilists,
    /// Legendre, weight = 1/2 on [−1, 1].
    LegendreUniform,
}

impl StandardFamily {
    pub fn name(self) -> &'static str {
        match self {
            StandardFamily::HermiteProbabilists => "hermite",
            StandardFamily::LegendreUniform => "legendre",
        }
    }
}

/// A probability density on a finite interval, used for Stieltjes construction.
#[derive(Clone)]
pub struct CustomWeight<T> {
    weight: WeightFn<T>,
    lo: T,
    hi: T,
}

impl<T: Scalar> CustomWeight<T> {
    /// Wraps `weight` on `[lo, hi]`, checking it is a nonnegative density.
    ///
    /// Infinite supports must be truncated by the caller before this point.
    pub fn new(weight: WeightFn<T>, lo: T, hi: T) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(UqError::InvalidArgument(format!(
                "custom weight support must be a finite interval, got [{lo}, {hi}]"
            )));
        }
        let (nodes, weights) = fejer_rule_on::<T>(DEFAULT_STIELTJES_RESOLUTION, lo, hi);
        let mut mass = T::zero();
        for (&x, &w) in nodes.iter().zip(&weights) {
            let f = weight(x);
            if !(f >= T::zero()) {
                return Err(UqError::InvalidArgument(format!(
                    "custom weight is negative or NaN at x = {x}"
                )));
            }
            mass = mass + w * f;
        }
        // coarse: kinked weights converge slowly on the fixed Fejér rule
        let tol = T::lit(1e-3);
        if (mass - T::one()).abs() > tol {
            return Err(UqError::InvalidArgument(format!(
                "custom weight integrates to {mass}, expected 1"
            )));
        }
        Ok(Self { weight, lo, hi })
    }

    pub fn support(&self) -> (T, T) {
        (self.lo, self.hi)
    }

    pub fn eval(&self, x: T) -> T {
        (self.weight)(x)
    }
}

impl<T: fmt::Debug> fmt::Debug for CustomWeight<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomWeight")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum PolynomialFamily<T> {
    HermiteProbabilists,
    LegendreUniform,
    Custom(CustomWeight<T>),
}

impl<T> From<StandardFamily> for PolynomialFamily<T> {
    fn from(f: StandardFamily) -> Self {
        match f {
            StandardFamily::HermiteProbabilists => PolynomialFamily::HermiteProbabilists,
            StandardFamily::LegendreUniform => PolynomialFamily::LegendreUniform,
        }
    }
}

/// Recurrence coefficients `a_0..a_{n−1}`, `b_1..b_{n−1}` and zeroth moment `m0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable<T> {
    a: Vec<T>,
    b: Vec<T>,
    m0: T,
    family: Option<StandardFamily>,
}

impl<T: Scalar> RecurrenceTable<T> {
    /// Builds a table from raw coefficients; `b[k−1]` holds `b_k`.
    pub fn new(a: Vec<T>, b: Vec<T>, m0: T) -> Result<Self> {
        if a.is_empty() {
            return Err(UqError::InvalidArgument(
                "recurrence table needs at least one a coefficient".into(),
            ));
        }
        if b.len() + 1 != a.len() {
            return Err(UqError::InvalidArgument(format!(
                "expected {} b coefficients for {} a coefficients, got {}",
                a.len() - 1,
                a.len(),
                b.len()
            )));
        }
        if let Some(k) = b.iter().position(|&bk| !(bk > T::zero() && bk.is_finite())) {
            return Err(UqError::InvalidMeasure { degree: k + 1 });
        }
        if !(m0 > T::zero() && m0.is_finite()) {
            return Err(UqError::InvalidMeasure { degree: 0 });
        }
        Ok(Self {
            a,
            b,
            m0,
            family: None,
        })
    }

    pub fn a(&self) -> &[T] {
        &self.a
    }

    /// `b_1..b_{n−1}`.
    pub fn b(&self) -> &[T] {
        &self.b
    }

    pub fn m0(&self) -> T {
        self.m0
    }

    /// Number of recurrence steps `n`; also the largest monic degree available.
    pub fn max_degree(&self) -> usize {
        self.a.len()
    }

    /// Largest degree for which `norm_squared` and orthonormal evaluation are defined.
    pub fn max_orthonormal_degree(&self) -> usize {
        self.b.len()
    }

    /// Standard family this table was generated from, if any.
    pub fn family(&self) -> Option<StandardFamily> {
        self.family
    }

    fn check_monic(&self, k: usize) -> Result<()> {
        if k > self.max_degree() {
            return Err(UqError::OutOfRange {
                what: "polynomial degree",
                index: k,
                max: self.max_degree(),
            });
        }
        Ok(())
    }

    fn check_normalized(&self, k: usize) -> Result<()> {
        if k > self.max_orthonormal_degree() {
            return Err(UqError::OutOfRange {
                what: "normalized polynomial degree",
                index: k,
                max: self.max_orthonormal_degree(),
            });
        }
        Ok(())
    }

    /// Monic `Ψ_k(x)` by forward recurrence.
    pub fn eval_ortho(&self, k: usize, x: T) -> Result<T> {
        self.check_monic(k)?;
        let mut prev = T::zero();
        let mut cur = T::one();
        for j in 0..k {
            let bj = if j == 0 { T::zero() } else { self.b[j - 1] };
            let next = (x - self.a[j]) * cur - bj * prev;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// `h_k² = m0 · ∏_{j=1..k} b_j`.
    pub fn norm_squared(&self, k: usize) -> Result<T> {
        self.check_normalized(k)?;
        Ok(self.b[..k].iter().fold(self.m0, |acc, &bj| acc * bj))
    }

    pub fn eval_orthonormal(&self, k: usize, x: T) -> Result<T> {
        let h2 = self.norm_squared(k)?;
        Ok(self.eval_ortho(k, x)? / h2.sqrt())
    }

    /// Orthonormal `ψ_0(x)..ψ_upto(x)` in one recurrence sweep.
    pub fn eval_orthonormal_all(&self, upto: usize, x: T) -> Result<Vec<T>> {
        self.check_normalized(upto)?;
        let mut out = Vec::with_capacity(upto + 1);
        // Normalized recurrence: sqrt(b_{k+1}) ψ_{k+1} = (x − a_k) ψ_k − sqrt(b_k) ψ_{k−1}
        let mut prev = T::zero();
        let mut cur = T::one() / self.m0.sqrt();
        out.push(cur);
        for k in 0..upto {
            let sb_k = if k == 0 { T::zero() } else { self.b[k - 1].sqrt() };
            let next = ((x - self.a[k]) * cur - sb_k * prev) / self.b[k].sqrt();
            prev = cur;
            cur = next;
            out.push(cur);
        }
        Ok(out)
    }
}

/// Closed-form recurrence for the standard families with `n` steps.
pub fn standard_recurrence<T: Scalar>(
    family: &PolynomialFamily<T>,
    n: usize,
) -> Result<RecurrenceTable<T>> {
    let std_family = match family {
        PolynomialFamily::HermiteProbabilists => StandardFamily::HermiteProbabilists,
        PolynomialFamily::LegendreUniform => StandardFamily::LegendreUniform,
        PolynomialFamily::Custom(_) => return Err(UqError::CustomFamily),
    };
    standard_table(std_family, n)
}

pub fn standard_table<T: Scalar>(family: StandardFamily, n: usize) -> Result<RecurrenceTable<T>> {
    if n == 0 {
        return Err(UqError::InvalidArgument(
            "recurrence table size must be at least 1".into(),
        ));
    }
    let a = vec![T::zero(); n];
    let b = (1..n)
        .map(|k| {
            let k = T::from_usize_lossy(k);
            match family {
                StandardFamily::HermiteProbabilists => k,
                StandardFamily::LegendreUniform => {
                    k * k / (T::lit(4.0) * k * k - T::one())
                }
            }
        })
        .collect();
    let mut table = RecurrenceTable::new(a, b, T::one())?;
    table.family = Some(family);
    Ok(table)
}

/// Fejér first-kind rule on [−1, 1]; weights sum to 2.
pub fn fejer_rule<T: Scalar>(n: usize) -> (Vec<T>, Vec<T>) {
    let pi = std::f64::consts::PI;
    let nf = n as f64;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    // Ascending order: k = n..1.
    for k in (1..=n).rev() {
        let angle = (2.0 * k as f64 - 1.0) * pi / (2.0 * nf);
        let mut s = 0.0;
        for j in 1..=n / 2 {
            let jf = j as f64;
            s += (2.0 * jf * angle).cos() / (4.0 * jf * jf - 1.0);
        }
        nodes.push(T::lit(angle.cos()));
        weights.push(T::lit(2.0 / nf * (1.0 - 2.0 * s)));
    }
    (nodes, weights)
}

fn fejer_rule_on<T: Scalar>(n: usize, lo: T, hi: T) -> (Vec<T>, Vec<T>) {
    let (x, w) = fejer_rule::<T>(n);
    let half = (hi - lo) / T::lit(2.0);
    let mid = (hi + lo) / T::lit(2.0);
    (
        x.into_iter().map(|t| mid + half * t).collect(),
        w.into_iter().map(|v| v * half).collect(),
    )
}

/// Discretized Stieltjes procedure: inner products on a `resolution`-point
/// Fejér rule over `[lo, hi]`.
pub fn stieltjes_recurrence<T: Scalar>(
    weight: &dyn Fn(T) -> T,
    lo: T,
    hi: T,
    n: usize,
    resolution: usize,
) -> Result<RecurrenceTable<T>> {
    if n == 0 {
        return Err(UqError::InvalidArgument(
            "recurrence table size must be at least 1".into(),
        ));
    }
    if resolution < 2 * n {
        return Err(UqError::InvalidArgument(format!(
            "resolution {resolution} below 2n = {}",
            2 * n
        )));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(UqError::InvalidArgument(format!(
            "support must be a finite interval, got [{lo}, {hi}]"
        )));
    }
    let (nodes, fw) = fejer_rule_on(resolution, lo, hi);
    let w: Vec<T> = nodes.iter().zip(&fw).map(|(&x, &c)| c * weight(x)).collect();
    let m0: T = w.iter().copied().sum();
    if !(m0 > T::zero() && m0.is_finite()) {
        return Err(UqError::InvalidMeasure { degree: 0 });
    }

    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n.saturating_sub(1));
    let mut p_prev = vec![T::zero(); resolution];
    let mut p_cur = vec![T::one(); resolution];
    let mut norm_prev = T::one();
    for k in 0..n {
        let mut norm = T::zero();
        let mut xnorm = T::zero();
        for i in 0..resolution {
            let q = w[i] * p_cur[i] * p_cur[i];
            norm = norm + q;
            xnorm = xnorm + q * nodes[i];
        }
        if !(norm > T::zero() && norm.is_finite()) {
            return Err(UqError::InvalidMeasure { degree: k });
        }
        let ak = xnorm / norm;
        let bk = if k == 0 {
            T::zero()
        } else {
            let bk = norm / norm_prev;
            if !(bk > T::zero()) {
                return Err(UqError::InvalidMeasure { degree: k });
            }
            b.push(bk);
            bk
        };
        a.push(ak);
        if k + 1 < n {
            for i in 0..resolution {
                let next = (nodes[i] - ak) * p_cur[i] - bk * p_prev[i];
                p_prev[i] = p_cur[i];
                p_cur[i] = next;
            }
        }
        norm_prev = norm;
    }
    RecurrenceTable::new(a, b, m0)
}

/// Stieltjes construction for a validated custom family.
pub fn custom_recurrence<T: Scalar>(
    weight: &CustomWeight<T>,
    n: usize,
    resolution: usize,
) -> Result<RecurrenceTable<T>> {
    let (lo, hi) = weight.support();
    stieltjes_recurrence(&|x| weight.eval(x), lo, hi, n, resolution)
}
