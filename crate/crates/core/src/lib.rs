//! Continuous-time quantum walk search on weighted barbell graphs.
//!
//! The crate models search for a marked vertex on two `N/2`-cliques joined
//! by a single bridge of weight `w`, under either the Laplacian walk
//! `H = -γ(A - D) + V` or the adjacency walk `H = -γA + V`.
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`graph_model`] | parameters, 5-dimensional subspace operators, full-space builder |
//! | [`propagator`] | eigendecomposition, exact evolution, time series, peak search |
//! | [`perturbation`] | degenerate perturbation theory per weight regime |
//! | [`asymptotics`] | large-`N` closed forms, peak constants, two-stage schedule |
//! | [`experiments`] | single-stage runs, sweeps, two-stage search, full-space cross-check |
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`.

pub mod asymptotics;
pub mod error;
pub mod experiments;
pub mod graph_model;
pub mod linalg;
pub mod perturbation;
pub mod propagator;
pub mod roots;
pub mod scalar;

pub use error::{Error, Result};
pub use graph_model::{basis, WalkKind, SUBSPACE_DIM};
pub use propagator::Observable;
pub use scalar::{Cplx, Real};

pub type Params = graph_model::BarbellParams<f64>;
pub type Operator = linalg::HermitianOperator<f64>;
pub type State = graph_model::SubspaceState<f64>;
pub type Eigen = propagator::EigenSystem<f64>;
pub type Series = propagator::TimeSeries<f64>;
pub type Peak = propagator::PeakResult<f64>;
pub type Probs = propagator::Probabilities<f64>;
