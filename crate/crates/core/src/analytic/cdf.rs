//! The equilibrium power distribution and its closed-form special cases.

use super::equilibrium::EquilibriumMoments;
use super::AnalyticError;
use crate::curve::{CdfCurve, CurveKind};
use crate::params::NetworkParams;
use crate::quadrature;
use crate::special;
use std::f64::consts::PI;

/// Default relative tolerance for the distribution integral.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Rate constants of the distribution integrand at one power level.
///
/// The distribution of the equilibrium transmit power evaluates to
/// `F(p) = integral of exp(-k1 r - k2 r^(alpha/2)) dr over r >= 0`,
/// where `k1 - 1` carries the interference load and `k2` the noise load.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KConstants {
    pub k1: f64,
    pub k2: f64,
}

/// Computes the rate constants at transmit power `p_watts`.
pub fn k_constants(
    params: &NetworkParams,
    moments: &EquilibriumMoments,
    p_watts: f64,
) -> Result<KConstants, AnalyticError> {
    if !(p_watts > 0.0) || !p_watts.is_finite() {
        return Err(AnalyticError::Degenerate("power level must be positive"));
    }
    let delta = params.delta();
    let sinc = special::normalized_sinc(delta)?;
    let load = moments.e_d + (params.lambda_c / params.lambda_d) * moments.e_c;
    let k1 = 1.0 + (params.beta_d / (params.mu * p_watts)).powf(delta) * load / sinc;
    let k2 = params.beta_d * params.sigma2
        / (params.mu * p_watts * (PI * params.lambda_d).powf(params.alpha / 2.0));
    Ok(KConstants { k1, k2 })
}

/// Evaluates `integral_0^inf exp(-k1 r - k2 r^(alpha/2)) dr` numerically.
///
/// This is always computed by quadrature, including at `k2 = 0` where a
/// closed form exists; the zero-noise identity between the two routes is
/// a correctness check, not a shortcut.
pub fn cdf_integral(
    k1: f64,
    k2: f64,
    alpha: f64,
    rel_tol: f64,
) -> Result<f64, AnalyticError> {
    if !(k1 > 0.0) {
        return Err(AnalyticError::Degenerate(
            "integral requires a positive linear rate constant",
        ));
    }
    if k2 < 0.0 {
        return Err(AnalyticError::Degenerate(
            "noise rate constant cannot be negative",
        ));
    }
    let half_alpha = alpha / 2.0;
    let v = quadrature::integrate_semi_infinite(
        |r| (-k1 * r - k2 * r.powf(half_alpha)).exp(),
        0.0,
        rel_tol,
    )?;
    Ok(v)
}

/// Distribution of the equilibrium transmit power, without the cap atom.
pub fn cdf_exact(
    params: &NetworkParams,
    moments: &EquilibriumMoments,
    p_watts: f64,
) -> Result<f64, AnalyticError> {
    let k = k_constants(params, moments, p_watts)?;
    cdf_integral(k.k1, k.k2, params.alpha, DEFAULT_QUAD_TOL)
}

/// Distribution of the cap-constrained equilibrium power: equal to
/// [`cdf_exact`] below the cap and exactly one from the cap upward (the
/// probability mass of capped links sits in an atom at `p_max`).
pub fn cdf_constrained(
    params: &NetworkParams,
    moments: &EquilibriumMoments,
    p_watts: f64,
) -> Result<f64, AnalyticError> {
    if p_watts >= params.p_max.watts() {
        Ok(1.0)
    } else {
        cdf_exact(params, moments, p_watts)
    }
}

/// Zero-noise (interference-limited) distribution, `1 / k1`.
///
/// Defined for any parameter set; it ignores the configured noise power
/// and is the reference the full distribution collapses to as noise
/// becomes negligible.
pub fn cdf_interference_limited(
    params: &NetworkParams,
    moments: &EquilibriumMoments,
    p_watts: f64,
) -> Result<f64, AnalyticError> {
    let k = k_constants(params, moments, p_watts)?;
    Ok(1.0 / k.k1)
}

/// Closed form of the distribution integral for a quartic path-loss
/// exponent, in terms of the scaled complementary error function:
/// `F = (1/2) sqrt(pi / k2) exp(z^2) erfc(z)` with `z = k1 / (2 sqrt(k2))`.
///
/// With `approx` set, the two-exponential erfc surrogate is used instead,
/// which yields `F = (1/12) sqrt(pi / k2) (1 + 3 exp(-k1^2 / (12 k2)))`.
pub fn lossy_closed_form(k1: f64, k2: f64, approx: bool) -> Result<f64, AnalyticError> {
    if !(k2 > 0.0) {
        return Err(AnalyticError::Degenerate(
            "quartic closed form needs a positive noise constant",
        ));
    }
    let z = k1 / (2.0 * k2.sqrt());
    let scale = (PI / k2).sqrt();
    if approx {
        Ok(scale / 12.0 * (1.0 + 3.0 * (-z * z / 3.0).exp()))
    } else {
        Ok(scale / 2.0 * special::erfcx(z))
    }
}

/// Quartic-exponent closed form evaluated at one power level.
pub fn cdf_lossy(
    params: &NetworkParams,
    moments: &EquilibriumMoments,
    p_watts: f64,
    approx: bool,
) -> Result<f64, AnalyticError> {
    if (params.alpha - 4.0).abs() > 1e-12 {
        return Err(AnalyticError::RequiresQuartic(params.alpha));
    }
    let k = k_constants(params, moments, p_watts)?;
    lossy_closed_form(k.k1, k.k2, approx)
}

/// Tabulates one analytic curve kind over a grid of powers in watts.
///
/// Grid points are evaluated in parallel when the `parallel` feature is
/// active; results are identical either way.
pub fn compute_curve(
    params: &NetworkParams,
    moments: &EquilibriumMoments,
    grid_w: &[f64],
    kind: CurveKind,
) -> Result<CdfCurve, AnalyticError> {
    let eval = |p: &f64| -> Result<f64, AnalyticError> {
        match kind {
            CurveKind::Analytic => cdf_exact(params, moments, *p),
            CurveKind::AnalyticConstrained => cdf_constrained(params, moments, *p),
            CurveKind::InterferenceLimited => cdf_interference_limited(params, moments, *p),
            CurveKind::LossyErfc => cdf_lossy(params, moments, *p, false),
            CurveKind::LossyErfcApprox => cdf_lossy(params, moments, *p, true),
            CurveKind::UpperBound => super::cdf_upper_bound(params, moments, *p),
            CurveKind::Empirical => Err(AnalyticError::Degenerate(
                "empirical curves are produced by the simulator",
            )),
        }
    };
    let values: Vec<f64> = crate::par::map_slice(grid_w, eval)
        .into_iter()
        .collect::<Result<_, _>>()?;
    Ok(CdfCurve::new(kind, grid_w.to_vec(), values)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    // Frozen references for the distribution integral.
    const INT_K1_1_K2_1_A4: f64 = 0.545_641_360_765_047_04;
    const INT_K1_2_K2_1_A4: f64 = 0.378_936_078_070_656_05;
    const LOSSY_APPROX_K1_2_K2_1: f64 = 0.465_209_157_755_681_93;

    fn quartic_params() -> NetworkParams {
        NetworkParams { alpha: 4.0, ..NetworkParams::default() }
    }

    #[test]
    fn integral_reference_values() {
        let v = cdf_integral(1.0, 1.0, 4.0, 1e-12).unwrap();
        assert_relative_eq!(v, INT_K1_1_K2_1_A4, max_relative = 1e-11);
        let v = cdf_integral(2.0, 1.0, 4.0, 1e-12).unwrap();
        assert_relative_eq!(v, INT_K1_2_K2_1_A4, max_relative = 1e-11);
    }

    #[test]
    fn integral_matches_erfc_closed_form_for_quartic_exponent() {
        for (k1, k2) in [(1.0, 1.0), (2.0, 1.0), (0.5, 3.0), (10.0, 0.2), (120.0, 4.0)] {
            let by_quadrature = cdf_integral(k1, k2, 4.0, 1e-12).unwrap();
            let by_erfc = lossy_closed_form(k1, k2, false).unwrap();
            assert_relative_eq!(by_quadrature, by_erfc, max_relative = 1e-9);
        }
    }

    #[test]
    fn lossy_approx_reference_value() {
        let v = lossy_closed_form(2.0, 1.0, true).unwrap();
        assert_relative_eq!(v, LOSSY_APPROX_K1_2_K2_1, max_relative = 1e-12);
    }

    #[test]
    fn zero_noise_integral_equals_reciprocal_rate() {
        // k2 = 0 still goes through quadrature; the identity with 1/k1 is
        // the cross-check.
        for k1 in [0.3, 1.0, 7.5, 250.0] {
            let v = cdf_integral(k1, 0.0, 3.0, 1e-12).unwrap();
            assert_relative_eq!(v, 1.0 / k1, max_relative = 1e-10);
        }
    }

    #[test]
    fn k_constants_reference_shape() {
        // Hand-checkable configuration: beta/(mu p) = 1, unit moment load,
        // alpha = 4 so sinc(1/2) = 2/pi and k1 = 1 + pi/2.
        let params = NetworkParams {
            alpha: 4.0,
            beta_d: 1.0,
            mu: 1.0,
            lambda_d: 1.0 / PI,
            lambda_c: 0.0,
            sigma2: 1.0,
            ..NetworkParams::default()
        };
        let moments = EquilibriumMoments::with_moments(0.0, 1.0);
        let k = k_constants(&params, &moments, 1.0).unwrap();
        assert_relative_eq!(k.k1, 1.0 + PI / 2.0, max_relative = 1e-14);
        assert_relative_eq!(k.k2, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn constrained_distribution_saturates_at_the_cap() {
        let params = NetworkParams::default();
        let moments = EquilibriumMoments::with_moments(0.0, 0.3);
        let cap = params.p_max.watts();
        assert_eq!(cdf_constrained(&params, &moments, cap).unwrap(), 1.0);
        assert_eq!(cdf_constrained(&params, &moments, cap * 2.0).unwrap(), 1.0);
        let below = cdf_constrained(&params, &moments, cap * 0.999).unwrap();
        assert!(below < 1.0);
        assert_relative_eq!(
            below,
            cdf_exact(&params, &moments, cap * 0.999).unwrap(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn lossy_requires_quartic_exponent_and_noise() {
        let moments = EquilibriumMoments::with_moments(0.0, 0.3);
        let err = cdf_lossy(&NetworkParams::default(), &moments, 0.01, false).unwrap_err();
        assert!(matches!(err, AnalyticError::RequiresQuartic(_)));

        let mut params = quartic_params();
        params.sigma2 = 0.0;
        let err = cdf_lossy(&params, &moments, 0.01, false).unwrap_err();
        assert!(matches!(err, AnalyticError::Degenerate(_)));
    }

    #[test]
    fn curve_evaluation_matches_pointwise_calls() {
        let params = quartic_params();
        let moments = EquilibriumMoments::with_moments(0.0, 0.2);
        let grid = crate::curve::log_grid_dbm(-40.0, 23.0, 24);
        let curve = compute_curve(&params, &moments, &grid, CurveKind::Analytic).unwrap();
        for (i, &p) in grid.iter().enumerate() {
            let direct = cdf_exact(&params, &moments, p).unwrap();
            assert_relative_eq!(curve.values()[i], direct, max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_nonpositive_power_and_rates() {
        let params = NetworkParams::default();
        let moments = EquilibriumMoments::with_moments(0.0, 0.3);
        assert!(k_constants(&params, &moments, 0.0).is_err());
        assert!(k_constants(&params, &moments, -1.0).is_err());
        assert!(cdf_integral(0.0, 1.0, 3.0, 1e-10).is_err());
        assert!(cdf_integral(1.0, -0.5, 3.0, 1e-10).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn distribution_values_are_probabilities(
            alpha in 2.1f64..5.9,
            log_p in -6.0f64..0.0,
            e_d in 0.0f64..1.0,
        ) {
            let params = NetworkParams { alpha, ..NetworkParams::default() };
            let moments = EquilibriumMoments::with_moments(0.0, e_d);
            let p = 10f64.powf(log_p);
            let f = cdf_exact(&params, &moments, p).unwrap();
            prop_assert!((0.0..=1.0).contains(&f), "F = {f}");
        }

        #[test]
        fn distribution_increases_with_power(
            alpha in 2.1f64..5.9,
            log_p in -5.0f64..-1.0,
        ) {
            let params = NetworkParams { alpha, ..NetworkParams::default() };
            let moments = EquilibriumMoments::with_moments(0.0, 0.3);
            let p = 10f64.powf(log_p);
            let f_lo = cdf_exact(&params, &moments, p).unwrap();
            let f_hi = cdf_exact(&params, &moments, p * 1.5).unwrap();
            prop_assert!(f_hi >= f_lo - 1e-9, "F({p}) = {f_lo} > F({}) = {f_hi}", p * 1.5);
        }
    }
}
