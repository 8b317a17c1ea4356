use super::surrogate::PceSurrogate;
use crate::error::{Result, UqError};
use crate::orthopoly::standard_table;
use crate::quadrature::{gauss_rule, TensorGrid};
use crate::scalar::Scalar;

/// Mean, variance, skewness and (non-excess) kurtosis per output.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSummary<T> {
    pub labels: Vec<String>,
    pub mean: Vec<T>,
    pub variance: Vec<T>,
    pub skewness: Vec<T>,
    pub kurtosis: Vec<T>,
    /// Set where the variance is too small for shape statistics; skewness and
    /// kurtosis are then reported as 0 and 3.
    pub degenerate: Vec<bool>,
}

impl<T: Scalar> MomentSummary<T> {
    /// Builds the summary from the mean, variance and the third and fourth
    /// central moments of each output.
    pub fn from_central(
        labels: Vec<String>,
        mean: Vec<T>,
        variance: Vec<T>,
        m3: &[T],
        m4: &[T],
    ) -> Self {
        let floor = T::lit(1e-300).max(T::min_positive_value());
        let mut skewness = Vec::with_capacity(mean.len());
        let mut kurtosis = Vec::with_capacity(mean.len());
        let mut degenerate = Vec::with_capacity(mean.len());
        for ((&v, &c3), &c4) in variance.iter().zip(m3).zip(m4) {
            if v < floor {
                skewness.push(T::zero());
                kurtosis.push(T::lit(3.0));
                degenerate.push(true);
            } else {
                skewness.push(c3 / v.powf(T::lit(1.5)));
                kurtosis.push(c4 / (v * v));
                degenerate.push(false);
            }
        }
        Self {
            labels,
            mean,
            variance,
            skewness,
            kurtosis,
            degenerate,
        }
    }

    pub fn len(&self) -> usize {
        self.mean.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mean.is_empty()
    }
}

/// Smallest per-dimension rule integrating the surrogate's fourth power exactly.
pub fn min_moment_points(p: usize) -> usize {
    (4 * p + 2) / 2
}

/// One point beyond [`min_moment_points`].
pub fn default_moment_points(p: usize) -> usize {
    min_moment_points(p) + 1
}

/// Moments of the surrogate.
///
/// Mean and variance come straight from the coefficients; the third and
/// fourth central moments are integrated exactly with a fresh Gauss rule of
/// `n_g_high` points per dimension applied to the surrogate.
pub fn moments<T: Scalar>(s: &PceSurrogate<T>, n_g_high: usize) -> Result<MomentSummary<T>> {
    let p = s.degree();
    if n_g_high < min_moment_points(p) {
        return Err(UqError::InvalidArgument(format!(
            "{n_g_high} points per dimension cannot integrate degree {} exactly; need {}",
            4 * p,
            min_moment_points(p)
        )));
    }
    let mean = s.mean();
    let variance = s.variance();
    let n_out = s.n_outputs();
    let mut m3 = vec![T::zero(); n_out];
    let mut m4 = vec![T::zero(); n_out];

    if p > 0 {
        let rules = s
            .input_spec()
            .params()
            .iter()
            .map(|prm| gauss_rule(&standard_table(prm.germ.family(), n_g_high)?, n_g_high))
            .collect::<Result<Vec<_>>>()?;
        let grid = TensorGrid::new(rules)?;
        let psis = grid.evaluate(|eps| s.basis().eval_all(eps));
        for (i, psi) in psis.into_iter().enumerate() {
            let psi = psi?;
            let (_, w) = grid.point(i);
            for (l, row) in s.coefficients().iter().enumerate() {
                let c: T = row[1..].iter().zip(&psi[1..]).map(|(&y, &q)| y * q).sum();
                let c2 = c * c;
                m3[l] = m3[l] + w * c2 * c;
                m4[l] = m4[l] + w * c2 * c2;
            }
        }
    }

    Ok(MomentSummary::from_central(
        s.output_labels().to_vec(),
        mean,
        variance,
        &m3,
        &m4,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pce::{InputSpec, UncertainParam};
    use approx::assert_abs_diff_eq;

    fn surrogate(germ_normal: bool, p: usize, coeffs: Vec<f64>) -> PceSurrogate<f64> {
        let prm = if germ_normal {
            UncertainParam::normal("x", 1.0, 0.1)
        } else {
            UncertainParam::uniform("x", 1.0, 0.1)
        };
        let spec = InputSpec::new(vec![prm]).unwrap();
        PceSurrogate::from_coefficients(spec, p, vec!["y".into()], vec![coeffs]).unwrap()
    }

    #[test]
    fn constant_surrogate() {
        let m = moments(&surrogate(true, 0, vec![5.0]), 2).unwrap();
        assert_eq!(m.mean, vec![5.0]);
        assert_eq!(m.variance, vec![0.0]);
        assert_eq!(m.skewness, vec![0.0]);
        assert_eq!(m.kurtosis, vec![3.0]);
        assert!(m.degenerate[0]);
    }

    #[test]
    fn variance_is_coefficient_energy() {
        let s = surrogate(true, 2, vec![1.0, 3.0, 4.0]);
        let m = moments(&s, default_moment_points(2)).unwrap();
        assert_abs_diff_eq!(m.variance[0], 25.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.mean[0], 1.0, epsilon = 0.0);
    }

    #[test]
    fn linear_gaussian_and_uniform_shapes() {
        // y = 2 + 3ε: normal → skew 0, kurt 3; uniform → skew 0, kurt 9/5
        let m = moments(&surrogate(true, 1, vec![2.0, 3.0]), 4).unwrap();
        assert_abs_diff_eq!(m.skewness[0], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.kurtosis[0], 3.0, epsilon = 1e-13);
        let m = moments(&surrogate(false, 1, vec![2.0, 3.0]), 4).unwrap();
        assert_abs_diff_eq!(m.kurtosis[0], 1.8, epsilon = 1e-13);
    }

    #[test]
    fn chi_square_shape() {
        // y = He_2(ε)/√2, i.e. (ε² − 1)/√2: skewness 2√2, kurtosis 15
        let m = moments(&surrogate(true, 2, vec![0.0, 0.0, 1.0]), 6).unwrap();
        assert_abs_diff_eq!(m.variance[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.skewness[0], 2.0 * 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(m.kurtosis[0], 15.0, epsilon = 1e-11);
    }

    #[test]
    fn too_few_points_rejected() {
        assert!(moments(&surrogate(true, 2, vec![0.0, 1.0, 1.0]), 4).is_err());
        assert_eq!(min_moment_points(4), 9);
        assert_eq!(default_moment_points(4), 10);
    }
}
