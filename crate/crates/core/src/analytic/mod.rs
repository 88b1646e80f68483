//! Closed-form and semi-analytic machinery for the equilibrium
//! transmit-power distribution of device pairs sharing uplink spectrum.
//!
//! The central object is the distribution function of the power a device
//! pair transmits at the fixed point of distributed SINR-target power
//! control, averaged over network geometry and fading. It is expressed as
//! a one-dimensional integral whose two rate constants `k1` and `k2`
//! collect the interference and noise contributions. Everything else in
//! this module is derived from that representation: special cases with
//! closed forms, a tail upper bound, and the self-consistency solve for
//! the fractional power moment that `k1` depends on.

mod bound;
mod cdf;
mod equilibrium;
mod laplace;

pub use bound::{cdf_upper_bound, holder_bound, holder_exponents, HolderExponents};
pub use cdf::{
    cdf_constrained, cdf_exact, cdf_integral, cdf_interference_limited, cdf_lossy,
    compute_curve, k_constants, lossy_closed_form, KConstants, DEFAULT_QUAD_TOL,
};
pub use equilibrium::{
    capped_moment_map, cellular_fractional_moment, moment_integral_constants,
    solve_equilibrium, unconstrained_moment_integral, EquilibriumMoments, SolverOptions,
};
pub use laplace::{laplace_cellular, laplace_d2d, laplace_total};

use crate::curve::CurveError;
use crate::params::ParamError;
use crate::quadrature::QuadratureError;
use crate::roots::RootError;
use crate::special::SpecialError;
use thiserror::Error;

/// Errors produced by the analytic layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    /// The requested formula is undefined for this configuration (for
    /// example the noise-driven closed forms at zero noise).
    #[error("formula undefined for this configuration: {0}")]
    Degenerate(&'static str),
    /// The erfc-based closed forms exist only for a path-loss exponent
    /// of exactly 4.
    #[error("closed form requires a path-loss exponent of 4, got {0}")]
    RequiresQuartic(f64),
    /// The fixed-point iteration for the power moment ran out of budget.
    #[error(
        "moment fixed point not reached: e_d {e_d}, residual {residual} \
         after {iterations} iterations"
    )]
    MomentNonConvergence { e_d: f64, residual: f64, iterations: u32 },
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}
