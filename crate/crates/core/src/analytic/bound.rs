//! Analytic upper bound on the power distribution.
//!
//! Splitting the distribution integrand `exp(-k1 r) * exp(-k2 r^(alpha/2))`
//! with a Hölder pair `(u, v)` gives
//! `F <= (1 / (u k1))^(1/u) * (Gamma(2/alpha + 1) (1 / (v k2))^(2/alpha))^(1/v)`,
//! valid for every conjugate pair. The bound reported here uses the
//! stationary pair, at which the exponent `u` solves
//! `u^(alpha - 2) (u - 1)^2 = (k2 / e)^2 / (k1 Gamma(2/alpha + 1) / e)^alpha`.
//! The left side is strictly increasing on `u > 1` and spans all of
//! `(0, inf)`, so the root is unique; the solve and the final assembly run
//! in log space to stay stable when either rate constant is extreme.

use super::cdf::{k_constants, KConstants};
use super::equilibrium::EquilibriumMoments;
use super::AnalyticError;
use crate::params::NetworkParams;
use crate::roots::find_root_increasing;
use crate::special;

/// A conjugate Hölder pair, `1/u + 1/v = 1` with `u, v > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderExponents {
    pub u: f64,
    pub v: f64,
}

/// Solves the stationarity condition for `w = u - 1 > 0`.
///
/// Working in `w` keeps roots representable when they crowd either end:
/// `u - 1` can be as small as 1e-60 in noise-starved regimes where `u`
/// itself would round to one.
fn stationary_w(k1: f64, k2: f64, alpha: f64) -> Result<f64, AnalyticError> {
    if !(k1 > 0.0 && k2 > 0.0) {
        return Err(AnalyticError::Degenerate(
            "the tail bound needs positive interference and noise constants",
        ));
    }
    let delta = 2.0 / alpha;
    let ln_gamma = special::gamma(delta + 1.0)?.ln();
    // Right-hand side of the stationarity condition, kept in logs.
    let ln_rhs = 2.0 * (k2.ln() - 1.0) - alpha * (k1.ln() + ln_gamma - 1.0);
    // (alpha - 2) ln(1 + w) + 2 ln w is strictly increasing on w > 0 and
    // covers all of (-inf, inf). The start point is picked below the root:
    // at w0 = min(exp(ln_rhs / 2) / 4, 1/4) the left side is at least
    // ln(16) - (alpha - 2) ln(5/4) > 1.8 short of the target.
    let lo = ((ln_rhs / 2.0).exp() / 4.0).min(0.25).max(f64::MIN_POSITIVE);
    let w = find_root_increasing(
        |w| (alpha - 2.0) * w.ln_1p() + 2.0 * w.ln(),
        lo,
        ln_rhs,
    )?;
    Ok(w)
}

/// Finds the stationary Hölder pair for the given rate constants.
///
/// Requires `k1 > 0` and `k2 > 0`; at zero noise the bound degenerates
/// (the optimal split pushes all weight onto the interference factor).
pub fn holder_exponents(
    k1: f64,
    k2: f64,
    alpha: f64,
) -> Result<HolderExponents, AnalyticError> {
    let w = stationary_w(k1, k2, alpha)?;
    Ok(HolderExponents { u: 1.0 + w, v: (1.0 + w) / w })
}

/// Evaluates the bound at the stationary pair, returning the pair as well.
pub fn holder_bound(
    k1: f64,
    k2: f64,
    alpha: f64,
) -> Result<(f64, HolderExponents), AnalyticError> {
    let w = stationary_w(k1, k2, alpha)?;
    let delta = 2.0 / alpha;
    let ln_gamma = special::gamma(delta + 1.0)?.ln();
    // 1/u = 1/(1+w) and 1/v = w/(1+w), assembled from w so that nothing
    // cancels when w is tiny or huge.
    let inv_u = 1.0 / (1.0 + w);
    let inv_v = w / (1.0 + w);
    let ln_v = w.ln_1p() - w.ln();
    let ln_bound = -inv_u * (k1.ln() + w.ln_1p())
        + inv_v * (ln_gamma - delta * (k2.ln() + ln_v));
    Ok((ln_bound.exp(), HolderExponents { u: 1.0 + w, v: (1.0 + w) / w }))
}

/// The tail bound at one power level, in raw (unclipped) form; values may
/// exceed one at small powers, where the bound carries no information.
pub fn cdf_upper_bound(
    params: &NetworkParams,
    moments: &EquilibriumMoments,
    p_watts: f64,
) -> Result<f64, AnalyticError> {
    let KConstants { k1, k2 } = k_constants(params, moments, p_watts)?;
    let (bound, _) = holder_bound(k1, k2, params.alpha)?;
    Ok(bound)
}
