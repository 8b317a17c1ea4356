//! Seeded Monte-Carlo sampling of the true model and kernel density estimates
//! of its outputs.
//!
//! Each input dimension draws from its own ChaCha8 stream (`stream = dim`)
//! seeded with the caller's seed, so draws do not depend on thread count.
//! Uniform germs use the top 53 bits of a 64-bit word; normal germs use the
//! Marsaglia polar transform of those uniforms.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use crate::error::{Result, UqError};
use crate::model::Model;
use crate::pce::{Germ, InputSpec, MomentSummary};
use crate::scalar::{to_f64_vec, Scalar};

/// Name of the normal transform, for run metadata.
pub const NORMAL_TRANSFORM: &str = "marsaglia-polar";
pub const GENERATOR: &str = "chacha8-stream-per-dimension";

/// Germ draws and (once evaluated) model outputs, row `i` per sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet<T> {
    pub seed: u64,
    pub germs: Vec<Vec<T>>,
    pub outputs: Vec<Vec<T>>,
    pub output_labels: Vec<String>,
}

impl<T: Scalar> SampleSet<T> {
    pub fn len(&self) -> usize {
        self.germs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.germs.is_empty()
    }

    /// Column `l` of the outputs.
    pub fn output_column(&self, l: usize) -> Vec<T> {
        self.outputs.iter().map(|row| row[l]).collect()
    }
}

fn unit_uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

struct GermStream {
    rng: ChaCha8Rng,
    germ: Germ,
    spare: Option<f64>,
}

impl GermStream {
    fn new(seed: u64, dim: usize, germ: Germ) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(dim as u64);
        Self {
            rng,
            germ,
            spare: None,
        }
    }

    fn next(&mut self) -> f64 {
        match self.germ {
            Germ::Uniform => 2.0 * unit_uniform(&mut self.rng) - 1.0,
            Germ::Normal => {
                if let Some(z) = self.spare.take() {
                    return z;
                }
                loop {
                    let u = 2.0 * unit_uniform(&mut self.rng) - 1.0;
                    let v = 2.0 * unit_uniform(&mut self.rng) - 1.0;
                    let s = u * u + v * v;
                    if s > 0.0 && s < 1.0 {
                        let f = (-2.0 * s.ln() / s).sqrt();
                        self.spare = Some(v * f);
                        return u * f;
                    }
                }
            }
        }
    }
}

/// Draws `n` germ vectors; deterministic in `(spec, n, seed)`.
pub fn draw_samples<T: Scalar>(spec: &InputSpec<T>, n: usize, seed: u64) -> SampleSet<T> {
    let columns: Vec<Vec<T>> = spec
        .params()
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let mut stream = GermStream::new(seed, k, p.germ);
            (0..n).map(|_| T::lit(stream.next())).collect()
        })
        .collect();
    let germs = (0..n)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    SampleSet {
        seed,
        germs,
        outputs: Vec::new(),
        output_labels: Vec::new(),
    }
}

/// Evaluates the model at every sample (possibly concurrently); results land
/// at their sample index.
pub fn evaluate_samples<T, M>(model: &M, spec: &InputSpec<T>, samples: &mut SampleSet<T>) -> Result<()>
where
    T: Scalar,
    M: Model<T> + ?Sized,
{
    let labels = model.output_labels();
    let results: Vec<Result<Vec<T>>> = samples
        .germs
        .par_iter()
        .enumerate()
        .map(|(i, eps)| {
            let theta = spec.map(eps);
            let fail = |message: String| UqError::ModelFailure {
                location: format!("sample {i} (theta {:?})", to_f64_vec(&theta)),
                message,
            };
            if let Some(p) = spec
                .params()
                .iter()
                .zip(&theta)
                .find(|(p, v)| p.positive && !(**v > T::zero()))
            {
                return Err(fail(format!("parameter '{}' is nonpositive", p.0.name)));
            }
            let out = model.evaluate(&theta).map_err(|e| fail(e.to_string()))?;
            if out.len() != labels.len() {
                return Err(fail(format!(
                    "model returned {} outputs, declared {}",
                    out.len(),
                    labels.len()
                )));
            }
            if out.iter().any(|v| !v.is_finite()) {
                return Err(fail("non-finite output".into()));
            }
            Ok(out)
        })
        .collect();
    samples.outputs = results.into_iter().collect::<Result<_>>()?;
    samples.output_labels = labels;
    Ok(())
}

/// Sample mean, unbiased variance, and moment-ratio skewness and kurtosis.
pub fn sample_moments<T: Scalar>(samples: &SampleSet<T>) -> Result<MomentSummary<T>> {
    let n = samples.len();
    if n == 0 || samples.outputs.len() != n {
        return Err(UqError::InvalidArgument(
            "sample set has no evaluated outputs".into(),
        ));
    }
    let nf = T::from_usize_lossy(n);
    let n_out = samples.output_labels.len();
    let mut mean = Vec::with_capacity(n_out);
    let mut variance = Vec::with_capacity(n_out);
    let mut skewness = Vec::with_capacity(n_out);
    let mut kurtosis = Vec::with_capacity(n_out);
    let mut degenerate = Vec::with_capacity(n_out);
    let floor = T::lit(1e-300).max(T::min_positive_value());
    for l in 0..n_out {
        let col = samples.output_column(l);
        let m = col.iter().copied().sum::<T>() / nf;
        let (mut s2, mut s3, mut s4) = (T::zero(), T::zero(), T::zero());
        for &x in &col {
            let c = x - m;
            let c2 = c * c;
            s2 = s2 + c2;
            s3 = s3 + c2 * c;
            s4 = s4 + c2 * c2;
        }
        let m2 = s2 / nf;
        mean.push(m);
        variance.push(if n > 1 { s2 / T::from_usize_lossy(n - 1) } else { T::zero() });
        if m2 < floor {
            skewness.push(T::zero());
            kurtosis.push(T::lit(3.0));
            degenerate.push(true);
        } else {
            skewness.push(s3 / nf / m2.powf(T::lit(1.5)));
            kurtosis.push(s4 / nf / (m2 * m2));
            degenerate.push(false);
        }
    }
    Ok(MomentSummary {
        labels: samples.output_labels.clone(),
        mean,
        variance,
        skewness,
        kurtosis,
        degenerate,
    })
}

/// Draws, evaluates, and summarizes `n` samples of the true model.
pub fn mc_moments<T, M>(model: &M, spec: &InputSpec<T>, n: usize, seed: u64) -> Result<MomentSummary<T>>
where
    T: Scalar,
    M: Model<T> + ?Sized,
{
    if n == 0 {
        return Err(UqError::InvalidArgument("sample size must be at least 1".into()));
    }
    let mut samples = draw_samples(spec, n, seed);
    evaluate_samples(model, spec, &mut samples)?;
    sample_moments(&samples)
}

/// Gaussian-kernel density estimate on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityCurve<T> {
    pub abscissae: Vec<T>,
    pub density: Vec<T>,
    pub bandwidth: T,
}

impl<T: Scalar> DensityCurve<T> {
    /// Trapezoid integral of the curve over its grid.
    pub fn integral(&self) -> T {
        self.abscissae
            .windows(2)
            .zip(self.density.windows(2))
            .map(|(x, f)| (x[1] - x[0]) * (f[0] + f[1]) / T::lit(2.0))
            .sum()
    }
}

pub const MIN_KDE_SAMPLES: usize = 100;

/// KDE with Silverman's bandwidth `1.06 s n^{−1/5}` on `[min − 3h, max + 3h]`.
pub fn kde<T: Scalar>(samples: &[T], grid_size: usize) -> Result<DensityCurve<T>> {
    let n = samples.len();
    if n < MIN_KDE_SAMPLES {
        return Err(UqError::InvalidArgument(format!(
            "KDE needs at least {MIN_KDE_SAMPLES} samples, got {n}"
        )));
    }
    if grid_size < 2 {
        return Err(UqError::InvalidArgument("KDE grid needs at least 2 points".into()));
    }
    let nf = T::from_usize_lossy(n);
    let mean = samples.iter().copied().sum::<T>() / nf;
    let var = samples.iter().map(|&x| (x - mean) * (x - mean)).sum::<T>() / T::from_usize_lossy(n - 1);
    if !(var > T::zero()) {
        return Err(UqError::DegenerateSample);
    }
    let h = T::lit(1.06) * var.sqrt() * nf.powf(T::lit(-0.2));
    let (lo, hi) = samples
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(a, b), &x| (a.min(x), b.max(x)));
    let (start, end) = (lo - T::lit(3.0) * h, hi + T::lit(3.0) * h);
    let step = (end - start) / T::from_usize_lossy(grid_size - 1);
    let norm = T::one() / (nf * h * T::lit((2.0 * std::f64::consts::PI).sqrt()));
    let abscissae: Vec<T> = (0..grid_size)
        .map(|i| if i + 1 == grid_size { end } else { start + step * T::from_usize_lossy(i) })
        .collect();
    let density = abscissae
        .par_iter()
        .map(|&x| {
            samples
                .iter()
                .map(|&s| {
                    let z = (x - s) / h;
                    (-(z * z) / T::lit(2.0)).exp()
                })
                .sum::<T>()
                * norm
        })
        .collect();
    Ok(DensityCurve {
        abscissae,
        density,
        bandwidth: h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::FnModel;
    use crate::pce::UncertainParam;

    fn spec_uniform() -> InputSpec<f64> {
        InputSpec::new(vec![UncertainParam::uniform("theta", 0.5, 0.28)]).unwrap()
    }

    #[test]
    fn deterministic_draws() {
        let spec = InputSpec::new(vec![
            UncertainParam::uniform("a", 1.0, 0.1),
            UncertainParam::normal("b", 1.0, 0.1),
        ])
        .unwrap();
        let a = draw_samples(&spec, 500, 42);
        let b = draw_samples(&spec, 500, 42);
        assert_eq!(a, b);
        let c = draw_samples(&spec, 500, 43);
        assert_ne!(a.germs, c.germs);
        assert!(a.germs.iter().all(|g| g[0] >= -1.0 && g[0] < 1.0));
        // prefix stability: more samples extend, not reshuffle
        let longer = draw_samples(&spec, 600, 42);
        assert_eq!(&longer.germs[..500], &a.germs[..]);
    }

    #[test]
    fn constant_and_identity_models() {
        let spec = spec_uniform();
        let constant = FnModel::new(["c"], |_t: &[f64]| Ok(vec![3.25]));
        let m = mc_moments(&constant, &spec, 1000, 7).unwrap();
        assert_eq!(m.mean[0], 3.25);
        assert_eq!(m.variance[0], 0.0);
        assert!(m.degenerate[0]);

        let ident = FnModel::new(["theta"], |t: &[f64]| Ok(vec![t[0]]));
        let m = mc_moments(&ident, &spec, 200_000, 7).unwrap();
        let expect = 0.28 * 0.28 / 3.0;
        // SE of the sample variance for a uniform: sqrt((μ4 − σ⁴)/n) ≈ 0.00009
        assert!((m.variance[0] - expect).abs() < 5e-4, "{}", m.variance[0]);
    }

    #[test]
    fn failure_names_sample() {
        let spec = spec_uniform();
        let model = FnModel::new(["x"], |t: &[f64]| {
            if t[0] > 0.77 {
                Err(UqError::Singular)
            } else {
                Ok(vec![t[0]])
            }
        });
        let err = mc_moments(&model, &spec, 5000, 1).unwrap_err();
        assert!(err.to_string().contains("sample"), "{err}");
    }

    #[test]
    fn kde_validation() {
        assert!(kde(&[1.0f64; 50], 64).is_err());
        assert!(matches!(kde(&[1.0f64; 200], 64), Err(UqError::DegenerateSample)));
    }

    #[test]
    fn kde_support_and_mass() {
        let spec = spec_uniform();
        let s = draw_samples(&spec, 5000, 3);
        let xs: Vec<f64> = s.germs.iter().map(|g| g[0]).collect();
        let curve = kde(&xs, 400).unwrap();
        let h = curve.bandwidth;
        assert!(curve.abscissae[0] >= -1.0 - 3.0 * h - 1e-12);
        assert!(*curve.abscissae.last().unwrap() <= 1.0 + 3.0 * h + 1e-12);
        assert!(curve.density.iter().all(|&d| d >= 0.0));
        let mass = curve.integral();
        assert!((0.98..=1.001).contains(&mass), "{mass}");
    }
}
