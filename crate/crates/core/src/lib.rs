//! Polynomial-chaos propagation of parameter uncertainty through Markovian
//! queueing models with unreliable servers.
//!
//! The numerical kernels are generic over the scalar type ([`Scalar`], i.e.
//! `f32` or `f64`); the aliases below fix the double-precision types used by
//! the command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod model;
pub mod montecarlo;
pub mod orthopoly;
pub mod pce;
pub mod quadrature;
pub mod queueing;
pub mod scalar;

pub use error::{Result, UqError};
pub use model::{FnModel, Model};
pub use scalar::Scalar;

/// Working precision of the front end.
pub type Real = f64;

pub type RecurrenceTable = orthopoly::RecurrenceTable<Real>;
pub type QuadratureRule1D = quadrature::QuadratureRule1D<Real>;
pub type TensorGrid = quadrature::TensorGrid<Real>;
pub type TotalDegreeBasis = pce::TotalDegreeBasis<Real>;
pub type InputSpec = pce::InputSpec<Real>;
pub type UncertainParam = pce::UncertainParam<Real>;
pub type PceSurrogate = pce::PceSurrogate<Real>;
pub type MomentSummary = pce::MomentSummary<Real>;
pub type SobolReport = pce::SobolReport<Real>;
pub type MG1NParams = queueing::MG1NParams<Real>;
pub type MM1ThresholdParams = queueing::MM1ThresholdParams<Real>;
pub type ServiceDistribution = queueing::ServiceDistribution<Real>;
pub type StationaryDist = queueing::StationaryDist<Real>;
pub type SampleSet = montecarlo::SampleSet<Real>;
pub type DensityCurve = montecarlo::DensityCurve<Real>;

/// Single-precision variants.
pub mod single {
    pub type RecurrenceTable = crate::orthopoly::RecurrenceTable<f32>;
    pub type QuadratureRule1D = crate::quadrature::QuadratureRule1D<f32>;
    pub type PceSurrogate = crate::pce::PceSurrogate<f32>;
    pub type InputSpec = crate::pce::InputSpec<f32>;
    pub type StationaryDist = crate::queueing::StationaryDist<f32>;
}
