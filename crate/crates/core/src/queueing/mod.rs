//! The two unreliable-server queueing models and their stationary solvers.
//!
//! * M/G/1/N with breakdowns at service start and exponential repairs,
//!   observed at service- and repair-completion epochs (a DTMC on `0..N−1`).
//! * M/M/1/N with breakdowns and threshold-based recovery (a CTMC on
//!   `(n, server state)` pairs).

mod linalg;
mod mg1n;
mod mm1;
mod stationary;

pub use linalg::SquareMatrix;
pub use mg1n::{a_coefficients, mg1n_matrix, MG1NParams, ServiceDistribution, StochasticMatrix};
pub use mm1::{mm1_generator, mm1_state_index, mm1_state_label, GeneratorMatrix, MM1ThresholdParams};
pub use stationary::{stationary_ctmc, stationary_dtmc, StationaryDist};
