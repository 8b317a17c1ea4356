use super::surrogate::PceSurrogate;
use crate::error::{Result, UqError};
use crate::scalar::Scalar;

/// Sobol' indices of one output, for every nonempty subset of inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct SobolIndices<T> {
    dim: usize,
    /// Indexed by subset bitmask; entry 0 (empty set) is unused and zero.
    by_mask: Vec<T>,
    total: Vec<T>,
    variance: T,
}

fn mask_of(subset: &[usize]) -> u32 {
    subset.iter().fold(0, |m, &i| m | (1 << i))
}

impl<T: Scalar> SobolIndices<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Output variance the indices are normalized by.
    pub fn variance(&self) -> T {
        self.variance
    }

    /// `S_T` for the set of zero-based input positions `subset`.
    pub fn subset(&self, subset: &[usize]) -> T {
        assert!(subset.iter().all(|&i| i < self.dim), "input index out of range");
        self.by_mask[mask_of(subset) as usize]
    }

    pub fn first_order(&self, i: usize) -> T {
        self.subset(&[i])
    }

    pub fn second_order(&self, i: usize, j: usize) -> T {
        self.subset(&[i, j])
    }

    pub fn total(&self, i: usize) -> T {
        self.total[i]
    }

    pub fn totals(&self) -> &[T] {
        &self.total
    }

    /// `(subset, S_subset)` for every nonempty subset, by increasing bitmask.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, T)> + '_ {
        (1..self.by_mask.len()).map(move |m| {
            let members = (0..self.dim).filter(|i| m & (1 << i) != 0).collect();
            (members, self.by_mask[m])
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SobolReport<T> {
    pub labels: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<SobolIndices<T>>,
}

/// Sobol' indices from the PC coefficients: `S_T` gathers the squared
/// coefficients whose multi-index support is exactly `T`.
pub fn sobol<T: Scalar>(s: &PceSurrogate<T>) -> Result<SobolReport<T>> {
    if s.degree() == 0 {
        return Err(UqError::InvalidArgument(
            "Sobol' indices need a surrogate of degree ≥ 1".into(),
        ));
    }
    let d = s.dim();
    let masks: Vec<u32> = s.basis().indices().iter().map(|m| m.support_mask()).collect();
    let mut outputs = Vec::with_capacity(s.n_outputs());
    for row in s.coefficients() {
        let mut by_mask = vec![T::zero(); 1 << d];
        for (&m, &y) in masks.iter().zip(row).skip(1) {
            by_mask[m as usize] = by_mask[m as usize] + y * y;
        }
        let variance: T = by_mask.iter().copied().sum();
        if !(variance > T::zero()) {
            return Err(UqError::DegenerateSobol);
        }
        let mut total = vec![T::zero(); d];
        for (i, t) in total.iter_mut().enumerate() {
            let without: T = by_mask
                .iter()
                .enumerate()
                .filter(|(m, _)| m & (1 << i) == 0)
                .map(|(_, &v)| v)
                .sum();
            *t = T::one() - without / variance;
        }
        for v in by_mask.iter_mut() {
            *v = *v / variance;
        }
        outputs.push(SobolIndices {
            dim: d,
            by_mask,
            total,
            variance,
        });
    }
    Ok(SobolReport {
        labels: s.output_labels().to_vec(),
        inputs: s.input_spec().names().into_iter().map(String::from).collect(),
        outputs,
    })
}
