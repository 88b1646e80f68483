//! Interference probes: direct Monte Carlo sampling of the aggregate
//! interference seen at the cell center, for validating the closed-form
//! Laplace transforms.
//!
//! A probe samples both fields over a (possibly enlarged) region around
//! the probe point and evaluates `exp(-s I)` per trial. With the region
//! large enough that the truncated tail is negligible, the sample means
//! estimate the infinite-plane transforms the formulas describe.

use super::geometry::{rayleigh_nearest_distance, Hexagon, Point};
use crate::params::{CellularPowerLaw, NetworkParams};
use crate::units::Power;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Exp};

/// Which interference field a probe evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSelect {
    Cellular,
    D2d,
    Total,
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeEstimate {
    pub mean: f64,
    pub std_err: f64,
    pub trials: u64,
}

/// Draws `trials` independent interference realizations at the center of
/// `region` and returns per-trial values of `exp(-s I)`.
///
/// Device transmitters all send at `p_d` watts; cellular powers follow
/// the configured law. With `exclude_nearest_ball` set, device
/// interferers closer to the probe than a fresh draw of the
/// nearest-neighbor distance law are removed, mimicking the clearance
/// around a receiver created by its own transmitter's proximity.
pub fn transform_samples(
    params: &NetworkParams,
    region: Hexagon,
    p_d: f64,
    s: f64,
    field: FieldSelect,
    exclude_nearest_ball: bool,
    master_seed: u64,
    trials: u64,
) -> Vec<f64> {
    assert!(s >= 0.0 && p_d >= 0.0);
    let probe = region.center;
    let unit = Exp::new(1.0).expect("positive rate");
    crate::par::map_indexed(trials as usize, |t| {
        let mut rng = ChaCha12Rng::seed_from_u64(master_seed);
        rng.set_stream(t as u64);

        let mut interference = 0.0f64;
        if matches!(field, FieldSelect::Cellular | FieldSelect::Total) {
            for pos in region.sample_ppp(params.lambda_c, &mut rng) {
                let power = match params.cellular_law {
                    CellularPowerLaw::Constant(p) => p.watts(),
                    CellularPowerLaw::UniformDbm { lo_dbm, hi_dbm } => {
                        Power::from_dbm(rng.gen_range(lo_dbm..hi_dbm)).watts()
                    }
                };
                let d = probe.distance(pos);
                if d > 0.0 {
                    interference += power * unit.sample(&mut rng) * d.powf(-params.alpha);
                }
            }
        }
        if matches!(field, FieldSelect::D2d | FieldSelect::Total) {
            let clearance = if exclude_nearest_ball {
                rayleigh_nearest_distance(params.lambda_d, &mut rng)
            } else {
                0.0
            };
            for pos in region.sample_ppp(params.lambda_d, &mut rng) {
                let d = probe.distance(pos);
                if d > clearance && d > 0.0 {
                    interference += p_d * unit.sample(&mut rng) * d.powf(-params.alpha);
                }
            }
        }
        (-s * interference).exp()
    })
}

/// Mean and standard error of `exp(-s I)` over independent trials.
#[allow(clippy::too_many_arguments)]
pub fn estimate_transform(
    params: &NetworkParams,
    region: Hexagon,
    p_d: f64,
    s: f64,
    field: FieldSelect,
    exclude_nearest_ball: bool,
    master_seed: u64,
    trials: u64,
) -> ProbeEstimate {
    let samples = transform_samples(
        params,
        region,
        p_d,
        s,
        field,
        exclude_nearest_ball,
        master_seed,
        trials,
    );
    let (mean, std_err) = crate::stats::mean_and_standard_error(&samples);
    ProbeEstimate { mean, std_err, trials }
}

/// A region large enough that interferers beyond it change the transform
/// at `s` by less than roughly `tail_budget` in the exponent, based on
/// the planar tail integral
/// `2 pi lambda s E[P] integral_R^inf x^(1-alpha) dx`.
pub fn enlarged_region(
    center: Point,
    lambda: f64,
    mean_power: f64,
    s: f64,
    alpha: f64,
    tail_budget: f64,
) -> Hexagon {
    assert!(alpha > 2.0 && tail_budget > 0.0);
    let coeff = 2.0 * std::f64::consts::PI * lambda * s * mean_power / (alpha - 2.0);
    // Solve coeff * R^(2 - alpha) = tail_budget; incircle must reach R, so
    // scale the circumradius by 2 / sqrt(3).
    let r = (coeff / tail_budget).powf(1.0 / (alpha - 2.0));
    Hexagon::new(center, r.max(1.0) * 2.0 / 3f64.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{laplace_d2d, laplace_total};

    fn probe_params() -> NetworkParams {
        NetworkParams {
            lambda_c: 1e-4,
            ..NetworkParams::default()
        }
    }

    fn region_for(params: &NetworkParams, p_d: f64, s: f64) -> Hexagon {
        enlarged_region(
            Point::new(0.0, 0.0),
            params.lambda_d + params.lambda_c,
            p_d.max(0.2),
            s,
            params.alpha,
            1e-4,
        )
    }

    #[test]
    fn transform_estimate_matches_the_formula_within_three_sigma() {
        let params = probe_params();
        let p_d = 0.05;
        let s = 1.0;
        let region = region_for(&params, p_d, s);
        let est = estimate_transform(
            &params, region, p_d, s, FieldSelect::Total, false, 2024, 4000,
        );
        let expected = laplace_total(&params, s, p_d).unwrap();
        assert!(
            (est.mean - expected).abs() <= 3.0 * est.std_err.max(1e-6),
            "estimate {} vs formula {expected} (se {})",
            est.mean,
            est.std_err
        );
    }

    #[test]
    fn exclusion_ball_raises_the_transform() {
        // Removing interferers can only decrease interference, hence
        // increase exp(-s I) on every draw in distribution.
        let params = NetworkParams::default();
        let p_d = 0.05;
        let s = 20.0;
        let region = region_for(&params, p_d, s);
        let with = estimate_transform(
            &params, region, p_d, s, FieldSelect::D2d, true, 7, 4000,
        );
        let without = estimate_transform(
            &params, region, p_d, s, FieldSelect::D2d, false, 7, 4000,
        );
        assert!(
            with.mean > without.mean,
            "exclusion {} should exceed baseline {}",
            with.mean,
            without.mean
        );
        let d2d_only = laplace_d2d(&params, s, p_d).unwrap();
        assert!(without.mean - d2d_only < 3.0 * without.std_err + 1e-3);
    }

    #[test]
    fn zero_argument_gives_unit_transform() {
        let params = probe_params();
        let region = region_for(&params, 0.05, 1.0);
        let samples =
            transform_samples(&params, region, 0.05, 0.0, FieldSelect::Total, false, 3, 50);
        assert!(samples.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn sampling_is_reproducible() {
        let params = probe_params();
        let region = region_for(&params, 0.05, 1.0);
        let a = transform_samples(&params, region, 0.05, 1.0, FieldSelect::Total, false, 11, 100);
        let b = transform_samples(&params, region, 0.05, 1.0, FieldSelect::Total, false, 11, 100);
        assert_eq!(a, b);
    }
}
