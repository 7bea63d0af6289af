//! Solver library for coupled parabolic PDE systems on the half-line `z > 0`
//! with (possibly random) 2x2 matrix coefficients,
//!
//! ```text
//!     du/dt = A u + B d2u/dz2,    u(z,0) = f(z),    du/dz(0,t) = g(t),
//! ```
//!
//! solved by the cosine Fourier transform: the transformed field satisfies a
//! linear ODE in time whose solution `V(t)(omega)` is inverted by a truncated
//! midpoint Riemann sum over frequencies. The crate provides
//!
//! - dense 2x2 linear algebra with a closed-form matrix exponential and the
//!   logarithmic norm ([`linalg`]),
//! - problem construction with the spectral-gap check on the diffusion
//!   matrix ([`problem`]),
//! - the frequency-domain kernel `V(t)(omega)` ([`kernel`]),
//! - truncated midpoint inversion, the Gauss-Laguerre baseline, and
//!   erfc-based truncation-radius selection ([`quadrature`]),
//! - the exact rotating-diffusion (ocean current) solution used as ground
//!   truth ([`oracle`]),
//! - truncated-distribution sampling and Monte Carlo / quadrature moment
//!   estimation for the random-coefficient case ([`stochastic`]).

// `!(x > 0.0)` guards reject NaN as well as nonpositive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod kernel;
pub mod linalg;
pub mod oracle;
pub mod problem;
pub mod quadrature;
pub mod special;
pub mod stochastic;

pub use error::Error;
pub use linalg::{Matrix2, SymmetricSpectrum, Vector2};
pub use problem::{BoundaryData, CoupledProblem};
pub use quadrature::{GaussLaguerreRule, QuadratureGrid, TruncationBound};
pub use stochastic::{MomentField, MonteCarloConfig, RandomCoefficients, TruncatedDistribution};
