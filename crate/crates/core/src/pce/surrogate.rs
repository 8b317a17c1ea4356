use serde::{Deserialize, Serialize};

use super::basis::{enumerate_basis, TotalDegreeBasis};
use super::input::{InputSpec, UncertainParam};
use crate::error::{Result, UqError};
use crate::model::Model;
use crate::orthopoly::standard_table;
use crate::quadrature::{gauss_rule, TensorGrid};
use crate::scalar::{to_f64_vec, Scalar};

pub const SURROGATE_SCHEMA: &str = "uq-surrogate/1";

/// PC coefficients (orthonormal convention) for every model output.
#[derive(Debug, Clone, PartialEq)]
pub struct PceSurrogate<T> {
    basis: TotalDegreeBasis<T>,
    coefficients: Vec<Vec<T>>,
    input_spec: InputSpec<T>,
    output_labels: Vec<String>,
}

impl<T: Scalar> PceSurrogate<T> {
    /// Assembles a surrogate from known coefficients, one row per output.
    pub fn from_coefficients(
        input_spec: InputSpec<T>,
        degree: usize,
        output_labels: Vec<String>,
        coefficients: Vec<Vec<T>>,
    ) -> Result<Self> {
        let basis = enumerate_basis(degree, input_spec.tables(degree + 1)?)?;
        if output_labels.len() != coefficients.len() {
            return Err(UqError::InvalidArgument(format!(
                "{} output labels for {} coefficient rows",
                output_labels.len(),
                coefficients.len()
            )));
        }
        if let Some(row) = coefficients.iter().find(|r| r.len() != basis.len()) {
            return Err(UqError::InvalidArgument(format!(
                "coefficient row has {} entries, basis has {}",
                row.len(),
                basis.len()
            )));
        }
        Ok(Self {
            basis,
            coefficients,
            input_spec,
            output_labels,
        })
    }

    pub fn basis(&self) -> &TotalDegreeBasis<T> {
        &self.basis
    }

    /// `[n_outputs][basis len]`.
    pub fn coefficients(&self) -> &[Vec<T>] {
        &self.coefficients
    }

    pub fn input_spec(&self) -> &InputSpec<T> {
        &self.input_spec
    }

    pub fn output_labels(&self) -> &[String] {
        &self.output_labels
    }

    pub fn n_outputs(&self) -> usize {
        self.coefficients.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn degree(&self) -> usize {
        self.basis.degree()
    }

    pub fn mean(&self) -> Vec<T> {
        self.coefficients.iter().map(|r| r[0]).collect()
    }

    /// `Σ_{j≥1} y_j²` per output.
    pub fn variance(&self) -> Vec<T> {
        self.coefficients
            .iter()
            .map(|r| r[1..].iter().map(|&y| y * y).sum())
            .collect()
    }

    /// `Σ_j y_j Ψ_j(ε)` per output.
    pub fn eval(&self, eps: &[T]) -> Result<Vec<T>> {
        let psi = self.basis.eval_all(eps)?;
        Ok(self
            .coefficients
            .iter()
            .map(|row| row.iter().zip(&psi).map(|(&y, &p)| y * p).sum())
            .collect())
    }

    pub fn to_document(&self) -> SurrogateDocument<T> {
        SurrogateDocument {
            schema: SURROGATE_SCHEMA.to_string(),
            d: self.dim(),
            p: self.degree(),
            inputs: self.input_spec.params().to_vec(),
            output_labels: self.output_labels.clone(),
            coefficients: self.coefficients.clone(),
        }
    }

    pub fn from_document(doc: SurrogateDocument<T>) -> Result<Self> {
        if doc.schema != SURROGATE_SCHEMA {
            return Err(UqError::InvalidArgument(format!(
                "unsupported surrogate schema '{}'",
                doc.schema
            )));
        }
        if doc.inputs.len() != doc.d {
            return Err(UqError::InvalidArgument(format!(
                "d = {} but {} inputs listed",
                doc.d,
                doc.inputs.len()
            )));
        }
        let spec = InputSpec::new(doc.inputs)?;
        Self::from_coefficients(spec, doc.p, doc.output_labels, doc.coefficients)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_document())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_document(serde_json::from_str(s)?)
    }
}

/// On-disk form of a surrogate; coefficient rows are per output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SurrogateDocument<T> {
    pub schema: String,
    pub d: usize,
    pub p: usize,
    pub inputs: Vec<UncertainParam<T>>,
    pub output_labels: Vec<String>,
    pub coefficients: Vec<Vec<T>>,
}

/// Spectral projection by tensor Gauss quadrature with `n_g[k]` points in
/// dimension `k`.
///
/// The model is evaluated once per grid node (possibly concurrently) and the
/// coefficients are reduced in grid order.
pub fn project<T, M>(
    model: &M,
    spec: &InputSpec<T>,
    basis: &TotalDegreeBasis<T>,
    n_g: &[usize],
) -> Result<PceSurrogate<T>>
where
    T: Scalar,
    M: Model<T> + ?Sized,
{
    let d = spec.dim();
    if basis.dim() != d {
        return Err(UqError::InvalidArgument(format!(
            "basis dimension {} differs from input dimension {d}",
            basis.dim()
        )));
    }
    if n_g.len() != d {
        return Err(UqError::InvalidArgument(format!(
            "{} quadrature sizes given for {d} dimensions",
            n_g.len()
        )));
    }
    let p = basis.degree();
    let mut rules = Vec::with_capacity(d);
    for (k, (param, table)) in spec.params().iter().zip(basis.tables()).enumerate() {
        let family = param.germ.family();
        if table.family() != Some(family) {
            return Err(UqError::GermMismatch {
                dim: k,
                detail: format!(
                    "germ '{}' requires {} polynomials, basis table is {:?}",
                    param.germ.name(),
                    family.name(),
                    table.family().map(|f| f.name())
                ),
            });
        }
        if n_g[k] < p + 1 {
            return Err(UqError::InvalidArgument(format!(
                "dimension {k}: {} quadrature points, degree {p} needs at least {}",
                n_g[k],
                p + 1
            )));
        }
        rules.push(gauss_rule(&standard_table(family, n_g[k])?, n_g[k])?);
    }
    let grid = TensorGrid::new(rules)?;
    let labels = model.output_labels();

    let evaluations = grid.evaluate(|eps| {
        let theta = spec.map(eps);
        if let Some((param, value)) = spec
            .params()
            .iter()
            .zip(&theta)
            .find(|(prm, v)| prm.positive && !(**v > T::zero()))
        {
            return Err(UqError::InvalidArgument(format!(
                "parameter '{}' maps to nonpositive value {value} at germ node {:?}",
                param.name,
                to_f64_vec(eps)
            )));
        }
        model.evaluate(&theta).map_err(|e| UqError::ModelFailure {
            location: format!(
                "germ node {:?} (theta {:?})",
                to_f64_vec(eps),
                to_f64_vec(&theta)
            ),
            message: e.to_string(),
        })
    });

    let mut coefficients = vec![vec![T::zero(); basis.len()]; labels.len()];
    for (i, result) in evaluations.into_iter().enumerate() {
        let (node, w) = grid.point(i);
        let values = result?;
        if values.len() != labels.len() {
            return Err(UqError::ModelFailure {
                location: format!("germ node {:?}", to_f64_vec(&node)),
                message: format!(
                    "model returned {} outputs, declared {}",
                    values.len(),
                    labels.len()
                ),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(UqError::NonFinite {
                node: to_f64_vec(&node),
            });
        }
        let psi = basis.eval_all(&node)?;
        for (row, &v) in coefficients.iter_mut().zip(&values) {
            let wv = w * v;
            for (c, &ps) in row.iter_mut().zip(&psi) {
                *c = *c + wv * ps;
            }
        }
    }

    Ok(PceSurrogate {
        basis: basis.clone(),
        coefficients,
        input_spec: spec.clone(),
        output_labels: labels,
    })
}
