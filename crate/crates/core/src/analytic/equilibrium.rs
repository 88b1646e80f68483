//! Self-consistency of the fractional power moment.
//!
//! The interference part of the rate constant `k1` depends on the moment
//! `e_d = E[P^(2/alpha)]` of the very power distribution it defines, so
//! the distribution is only available after solving a scalar fixed-point
//! problem. With the transmit cap in place the map is a smooth integral
//! over a finite range and the damped iteration below converges to the
//! minimal fixed point, the one distributed power control reaches when
//! powers ramp up from the noise floor.

use super::cdf::{cdf_integral, k_constants};
use super::AnalyticError;
use crate::params::NetworkParams;
use crate::quadrature;
use crate::special;

/// Result of the moment solve, plus the exogenous cellular moment.
///
/// `e_c` is the fractional moment of the cellular power law and `e_d` the
/// self-consistent fractional moment of the device power distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumMoments {
    pub e_c: f64,
    pub e_d: f64,
    /// Fixed-point residual `|T(e_d) - e_d|` at the returned point.
    pub residual: f64,
    /// Moment-map evaluations performed by the solver.
    pub iterations: u32,
}

impl EquilibriumMoments {
    /// Wraps externally chosen moments, e.g. for sensitivity studies or
    /// tests; residual and iteration count are zeroed.
    pub fn with_moments(e_c: f64, e_d: f64) -> Self {
        EquilibriumMoments { e_c, e_d, residual: 0.0, iterations: 0 }
    }
}

/// Knobs of the damped fixed-point iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Damping weight on the new iterate, in (0, 1].
    pub damping: f64,
    /// Convergence when `|T(e) - e| <= rel_tolerance * max(1, e)`.
    pub rel_tolerance: f64,
    pub max_iterations: u32,
    /// Relative tolerance of the inner distribution integral; the outer
    /// moment integral runs at ten times this value.
    pub quad_rel_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            damping: 0.5,
            rel_tolerance: 1e-8,
            max_iterations: 200,
            quad_rel_tol: 1e-10,
        }
    }
}

/// Fractional moment `E[P_C^(2/alpha)]` of the cellular power law.
pub fn cellular_fractional_moment(params: &NetworkParams) -> f64 {
    params.cellular_law.fractional_moment(params.alpha)
}

/// One application of the capped moment map `T`.
///
/// `T(e_d)` is the fractional moment of the cap-constrained power
/// distribution computed with interference load `e_d`:
/// `T(e_d) = integral_0^(p_max^(2/alpha)) (1 - F(q^(alpha/2); e_d)) dq`.
/// The substitution `q = p^(2/alpha)` removes the integrable singularity
/// the direct moment integral has at zero power, and the cap truncates
/// the logarithmically divergent tail, so the map is finite without any
/// regularization.
pub fn capped_moment_map(
    params: &NetworkParams,
    e_c: f64,
    e_d: f64,
    quad_rel_tol: f64,
) -> Result<f64, AnalyticError> {
    let probe = EquilibriumMoments::with_moments(e_c, e_d);
    let q_max = params.p_max.watts().powf(params.delta());
    let half_alpha = params.alpha / 2.0;
    let integrand = |q: f64| -> f64 {
        let p = q.powf(half_alpha);
        match k_constants(params, &probe, p)
            .and_then(|k| cdf_integral(k.k1, k.k2, params.alpha, quad_rel_tol))
        {
            Ok(f) => 1.0 - f,
            // Surfaces as a NotFinite quadrature error upstream.
            Err(_) => f64::NAN,
        }
    };
    let v = quadrature::integrate(integrand, 0.0, q_max, quad_rel_tol * 10.0)?;
    Ok(v)
}

/// Solves the moment fixed point `e_d = T(e_d)` by damped iteration
/// started at zero.
///
/// Starting from zero selects the minimal fixed point when several exist,
/// matching the operating point that iterative power control reaches when
/// transmitters start from low power. The damping factor trades speed for
/// robustness near loaded regimes where the map is steep.
pub fn solve_equilibrium(
    params: &NetworkParams,
    opts: &SolverOptions,
) -> Result<EquilibriumMoments, AnalyticError> {
    params.validate()?;
    let e_c = cellular_fractional_moment(params);

    let mut e = 0.0f64;
    let mut residual = f64::INFINITY;
    for iteration in 1..=opts.max_iterations {
        let t = capped_moment_map(params, e_c, e, opts.quad_rel_tol)?;
        residual = (t - e).abs();
        if residual <= opts.rel_tolerance * e.abs().max(1.0) {
            return Ok(EquilibriumMoments { e_c, e_d: e, residual, iterations: iteration });
        }
        e = (1.0 - opts.damping) * e + opts.damping * t;
    }
    Err(AnalyticError::MomentNonConvergence {
        e_d: e,
        residual,
        iterations: opts.max_iterations,
    })
}

/// Coefficients of the study form of the uncapped moment integrand; see
/// [`unconstrained_moment_integral`].
pub fn moment_integral_constants(
    params: &NetworkParams,
    e_c: f64,
) -> Result<(f64, f64, f64), AnalyticError> {
    let delta = params.delta();
    let sinc = special::normalized_sinc(delta)?;
    let a1 = (params.beta_d / params.mu).powf(delta) * delta / sinc;
    let a2 = (params.lambda_c / params.lambda_d) * e_c;
    let a3 = params.beta_d * params.sigma2
        / (params.mu * (std::f64::consts::PI * params.lambda_d).powf(params.alpha / 2.0));
    Ok((a1, a2, a3))
}

/// Evaluates the uncapped self-consistency integral from an explicit
/// lower cutoff:
/// `integral_(x_min)^inf (a1 (a2 + e_d) / x + a3 x^(-2/alpha))
///  exp(-(alpha/2) a1 (a2 + e_d) x^(2/alpha) - a3 x) dx`.
///
/// Without a transmit cap the moment integral carries a logarithmic
/// divergence: each decade of cutoff reduction adds about
/// `a1 (a2 + e_d) ln 10` to the value. The function exists to quantify
/// exactly that behavior; equilibrium computations use the capped map,
/// which needs no cutoff.
pub fn unconstrained_moment_integral(
    params: &NetworkParams,
    e_c: f64,
    e_d: f64,
    x_min: f64,
) -> Result<f64, AnalyticError> {
    if !(x_min > 0.0) {
        return Err(AnalyticError::Degenerate(
            "the uncapped moment integral needs a positive lower cutoff",
        ));
    }
    let (a1, a2, a3) = moment_integral_constants(params, e_c)?;
    let delta = params.delta();
    let interference = a1 * (a2 + e_d);
    let v = quadrature::integrate_semi_infinite(
        |x| {
            (interference / x + a3 * x.powf(-delta))
                * (-(1.0 / delta) * interference * x.powf(delta) - a3 * x).exp()
        },
        x_min,
        1e-10,
    )?;
    Ok(v)
}
