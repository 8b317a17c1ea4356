//! Polynomial chaos expansions: total-degree bases, spectral projection,
//! and the statistics that follow from the coefficients.

mod basis;
mod input;
mod moments;
mod sobol;
mod surrogate;

pub use basis::{basis_size, enumerate_basis, total_degree_indices, MultiIndex, TotalDegreeBasis};
pub use input::{Germ, InputSpec, UncertainParam};
pub use moments::{default_moment_points, min_moment_points, moments, MomentSummary};
pub use sobol::{sobol, SobolIndices, SobolReport};
pub use surrogate::{project, PceSurrogate, SurrogateDocument, SURROGATE_SCHEMA};
