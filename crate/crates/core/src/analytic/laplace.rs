//! Laplace transforms of the aggregate interference at a typical receiver.
//!
//! For a planar Poisson field of interferers with density `lambda`,
//! unit-mean exponential fading on top of `d^(-alpha)` distance loss and
//! transmit powers with fractional moment `E[P^(2/alpha)]`, the aggregate
//! interference `I` satisfies
//! `E[exp(-s I)] = exp(-pi lambda s^(2/alpha) E[P^(2/alpha)] / sinc(2/alpha))`.
//! The cellular and device fields are independent, so their transforms
//! multiply. These expressions are what the simulation's interference
//! probes are validated against.

use super::AnalyticError;
use crate::params::NetworkParams;
use crate::special;
use std::f64::consts::PI;

/// Laplace transform of one Poisson interference field.
///
/// # Arguments
///
/// * `s` - transform argument, `s >= 0`.
/// * `lambda` - interferer density.
/// * `fractional_moment` - `E[P^(2/alpha)]` of the field's power law.
/// * `alpha` - path-loss exponent.
pub fn laplace_field(
    s: f64,
    lambda: f64,
    fractional_moment: f64,
    alpha: f64,
) -> Result<f64, AnalyticError> {
    if s < 0.0 {
        return Err(AnalyticError::Degenerate(
            "Laplace transforms are evaluated at non-negative arguments",
        ));
    }
    if s == 0.0 || lambda == 0.0 || fractional_moment == 0.0 {
        return Ok(1.0);
    }
    let delta = 2.0 / alpha;
    let sinc = special::normalized_sinc(delta)?;
    Ok((-PI * lambda * s.powf(delta) * fractional_moment / sinc).exp())
}

/// Transform of the cellular interference field.
pub fn laplace_cellular(params: &NetworkParams, s: f64) -> Result<f64, AnalyticError> {
    laplace_field(
        s,
        params.lambda_c,
        params.cellular_law.fractional_moment(params.alpha),
        params.alpha,
    )
}

/// Transform of the device interference field when every device transmits
/// at power `p_d` watts.
pub fn laplace_d2d(params: &NetworkParams, s: f64, p_d: f64) -> Result<f64, AnalyticError> {
    laplace_field(s, params.lambda_d, p_d.powf(params.delta()), params.alpha)
}

/// Transform of the total interference; the two fields are independent,
/// so this is the product of the individual transforms.
pub fn laplace_total(params: &NetworkParams, s: f64, p_d: f64) -> Result<f64, AnalyticError> {
    Ok(laplace_cellular(params, s)? * laplace_d2d(params, s, p_d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::Power;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    // exp(-pi/2), the transform at an engineered reference configuration.
    const EXP_MINUS_HALF_PI: f64 = 0.207_879_576_350_761_91;

    fn probe_params() -> NetworkParams {
        NetworkParams {
            lambda_c: 1e-4,
            cellular_law: crate::params::CellularPowerLaw::Constant(
                Power::from_watts(1.0).unwrap(),
            ),
            ..NetworkParams::default()
        }
    }

    #[test]
    fn engineered_reference_value() {
        // alpha = 4 makes sinc(1/2) = 2/pi; with lambda = 1/pi, s = 1 and
        // a unit moment the exponent is -pi (1/pi) (pi/2) = -pi/2.
        let v = laplace_field(1.0, 1.0 / PI, 1.0, 4.0).unwrap();
        assert_relative_eq!(v, EXP_MINUS_HALF_PI, max_relative = 1e-13);
    }

    #[test]
    fn transform_at_zero_is_one() {
        let params = probe_params();
        assert_eq!(laplace_cellular(&params, 0.0).unwrap(), 1.0);
        assert_eq!(laplace_d2d(&params, 0.0, 0.1).unwrap(), 1.0);
        assert_eq!(laplace_total(&params, 0.0, 0.1).unwrap(), 1.0);
    }

    #[test]
    fn empty_field_contributes_nothing() {
        let params = NetworkParams::default(); // lambda_c = 0
        assert_eq!(laplace_cellular(&params, 3.0).unwrap(), 1.0);
        let t = laplace_total(&params, 3.0, 0.05).unwrap();
        let d = laplace_d2d(&params, 3.0, 0.05).unwrap();
        assert_relative_eq!(t, d, max_relative = 1e-15);
    }

    #[test]
    fn independence_makes_the_total_a_product() {
        let params = probe_params();
        for s in [0.1, 1.0, 10.0] {
            let t = laplace_total(&params, s, 0.08).unwrap();
            let c = laplace_cellular(&params, s).unwrap();
            let d = laplace_d2d(&params, s, 0.08).unwrap();
            assert_relative_eq!(t, c * d, max_relative = 1e-14);
        }
    }

    #[test]
    fn negative_argument_is_rejected() {
        assert!(laplace_field(-0.1, 1e-4, 1.0, 3.0).is_err());
    }

    proptest! {
        #[test]
        fn transform_is_a_decreasing_probability(
            log_s in -2.0f64..2.0,
            alpha in 2.1f64..5.9,
        ) {
            // A Laplace transform of a non-negative random variable is in
            // (0, 1] and decreasing in s.
            let s = 10f64.powf(log_s);
            let a = laplace_field(s, 8e-4, 0.3, alpha).unwrap();
            let b = laplace_field(s * 1.3, 8e-4, 0.3, alpha).unwrap();
            prop_assert!(a > 0.0 && a <= 1.0);
            prop_assert!(b < a);
        }

        #[test]
        fn complete_monotonicity_second_difference(
            s in 0.05f64..5.0,
        ) {
            // Convexity in s, a consequence of complete monotonicity.
            let h = 0.01;
            let params = probe_params();
            let f = |x: f64| laplace_total(&params, x, 0.1).unwrap();
            let second = f(s + h) - 2.0 * f(s) + f(s - h);
            prop_assert!(second >= -1e-12);
        }
    }
}
