//! Network-level parameters shared by the analytic and simulation paths.

use crate::quadrature;
use crate::units::Power;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Validation failures for [`NetworkParams`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("path-loss exponent must satisfy 2 < alpha < 6, got {0}")]
    PathLossExponent(f64),
    #[error("device-pair density must be positive, got {0}")]
    PairDensity(f64),
    #[error("cellular density must be non-negative, got {0}")]
    CellularDensity(f64),
    #[error("link-gain scale mu must be positive, got {0}")]
    GainScale(f64),
    #[error("SINR target must be positive, got {0}")]
    SinrTarget(f64),
    #[error("noise power must be non-negative, got {0}")]
    NoisePower(f64),
    #[error("maximum transmit power must be positive, got {0} W")]
    MaxPower(f64),
    #[error("uniform power law needs lo < hi in dBm, got [{lo}, {hi}]")]
    UniformLaw { lo: f64, hi: f64 },
}

/// Transmit-power law of the cellular (non-device) transmitters.
///
/// Only the fractional moment `E[P^(2/alpha)]` of this law enters the
/// distribution formulas, so the enum stays deliberately small.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CellularPowerLaw {
    /// Every cellular transmitter uses the same power.
    Constant(Power),
    /// Power drawn uniformly in dBm between the two bounds (a log-uniform
    /// law in watts), a common stand-in for open-loop fractional power
    /// control.
    UniformDbm { lo_dbm: f64, hi_dbm: f64 },
}

impl CellularPowerLaw {
    /// `E[P^(2/alpha)]` with `P` in watts.
    pub fn fractional_moment(&self, alpha: f64) -> f64 {
        let e = 2.0 / alpha;
        match *self {
            CellularPowerLaw::Constant(p) => p.watts().powf(e),
            CellularPowerLaw::UniformDbm { lo_dbm, hi_dbm } => {
                // Exact closed form: with c = e ln10 / 10,
                // E[P^e] = (10^(c hi / ln10 * 10) ... ) reduces to
                // (P_hi^e - P_lo^e) / (c (hi - lo)).
                let c = e * std::f64::consts::LN_10 / 10.0;
                let lo_w = Power::from_dbm(lo_dbm).watts();
                let hi_w = Power::from_dbm(hi_dbm).watts();
                (hi_w.powf(e) - lo_w.powf(e)) / (c * (hi_dbm - lo_dbm))
            }
        }
    }

    /// Same moment evaluated by numerical integration over the dBm density.
    ///
    /// Exists as an independent cross-check of the closed form; production
    /// code uses [`Self::fractional_moment`].
    pub fn fractional_moment_by_quadrature(
        &self,
        alpha: f64,
    ) -> Result<f64, quadrature::QuadratureError> {
        let e = 2.0 / alpha;
        match *self {
            CellularPowerLaw::Constant(p) => Ok(p.watts().powf(e)),
            CellularPowerLaw::UniformDbm { lo_dbm, hi_dbm } => {
                let width = hi_dbm - lo_dbm;
                quadrature::integrate(
                    |dbm| Power::from_dbm(dbm).watts().powf(e) / width,
                    lo_dbm,
                    hi_dbm,
                    1e-12,
                )
            }
        }
    }

    fn validate(&self) -> Result<(), ParamError> {
        match *self {
            CellularPowerLaw::Constant(p) => {
                if p.watts() <= 0.0 {
                    return Err(ParamError::MaxPower(p.watts()));
                }
            }
            CellularPowerLaw::UniformDbm { lo_dbm, hi_dbm } => {
                if !(lo_dbm < hi_dbm) || !lo_dbm.is_finite() || !hi_dbm.is_finite() {
                    return Err(ParamError::UniformLaw { lo: lo_dbm, hi: hi_dbm });
                }
            }
        }
        Ok(())
    }
}

/// Static parameters of the underlay network.
///
/// Distances are in meters, densities in transmitters per square meter,
/// powers in watts. `mu` is the mean of the exponentially distributed
/// desired-link gain coefficient and absorbs the fixed portion of the link
/// budget (antenna gains and the path-loss intercept); interfering links
/// carry unit-mean fading on top of pure distance loss.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkParams {
    /// Density of cellular transmitters.
    pub lambda_c: f64,
    /// Density of device pairs.
    pub lambda_d: f64,
    /// Path-loss exponent, in (2, 6).
    pub alpha: f64,
    /// Mean of the desired-link gain coefficient.
    pub mu: f64,
    /// SINR target of device links (linear scale).
    pub beta_d: f64,
    /// Noise power in watts.
    pub sigma2: f64,
    /// Per-device transmit power cap.
    pub p_max: Power,
    /// Transmit-power law of the cellular transmitters.
    pub cellular_law: CellularPowerLaw,
}

impl NetworkParams {
    /// Checks every domain restriction at once, reporting the first
    /// violation.
    pub fn validate(&self) -> Result<(), ParamError> {
        if !(self.alpha > 2.0 && self.alpha < 6.0) {
            return Err(ParamError::PathLossExponent(self.alpha));
        }
        if !(self.lambda_d > 0.0) || !self.lambda_d.is_finite() {
            return Err(ParamError::PairDensity(self.lambda_d));
        }
        if !(self.lambda_c >= 0.0) || !self.lambda_c.is_finite() {
            return Err(ParamError::CellularDensity(self.lambda_c));
        }
        if !(self.mu > 0.0) || !self.mu.is_finite() {
            return Err(ParamError::GainScale(self.mu));
        }
        if !(self.beta_d > 0.0) || !self.beta_d.is_finite() {
            return Err(ParamError::SinrTarget(self.beta_d));
        }
        if !(self.sigma2 >= 0.0) || !self.sigma2.is_finite() {
            return Err(ParamError::NoisePower(self.sigma2));
        }
        if !(self.p_max.watts() > 0.0) {
            return Err(ParamError::MaxPower(self.p_max.watts()));
        }
        self.cellular_law.validate()
    }

    /// `2 / alpha`, the exponent that appears throughout the formulas.
    pub fn delta(&self) -> f64 {
        2.0 / self.alpha
    }
}

impl Default for NetworkParams {
    /// The reference operating point used by the bundled experiments:
    /// an interference-dominated urban profile with a 23 dBm device cap,
    /// -100 dBm noise, a -10 dB SINR target and a desired-link gain scale
    /// of 1e-3 (a 30 dB net link-budget intercept).
    fn default() -> Self {
        NetworkParams {
            lambda_c: 0.0,
            lambda_d: 8e-4,
            alpha: 3.0,
            mu: 1e-3,
            beta_d: 0.1,
            sigma2: Power::from_dbm(-100.0).watts(),
            p_max: Power::from_dbm(23.0),
            cellular_law: CellularPowerLaw::Constant(Power::from_dbm(23.0)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn default_profile_is_valid() {
        let p = NetworkParams::default();
        p.validate().unwrap();
        assert_relative_eq!(p.p_max.watts(), 0.199_526_231_496_888, max_relative = 1e-12);
        assert_relative_eq!(p.sigma2, 1e-13, max_relative = 1e-12);
        assert_relative_eq!(p.delta(), 2.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn each_domain_violation_is_caught() {
        let ok = NetworkParams::default();

        let mut p = ok.clone();
        p.alpha = 2.0;
        assert!(matches!(p.validate(), Err(ParamError::PathLossExponent(_))));
        p.alpha = 6.0;
        assert!(matches!(p.validate(), Err(ParamError::PathLossExponent(_))));

        let mut p = ok.clone();
        p.lambda_d = 0.0;
        assert!(matches!(p.validate(), Err(ParamError::PairDensity(_))));

        let mut p = ok.clone();
        p.lambda_c = -1.0;
        assert!(matches!(p.validate(), Err(ParamError::CellularDensity(_))));

        let mut p = ok.clone();
        p.mu = 0.0;
        assert!(matches!(p.validate(), Err(ParamError::GainScale(_))));

        let mut p = ok.clone();
        p.beta_d = -0.1;
        assert!(matches!(p.validate(), Err(ParamError::SinrTarget(_))));

        let mut p = ok.clone();
        p.sigma2 = -1e-15;
        assert!(matches!(p.validate(), Err(ParamError::NoisePower(_))));

        let mut p = ok.clone();
        p.p_max = Power::from_watts(0.0).unwrap();
        assert!(matches!(p.validate(), Err(ParamError::MaxPower(_))));

        let mut p = ok;
        p.cellular_law = CellularPowerLaw::UniformDbm { lo_dbm: 10.0, hi_dbm: 10.0 };
        assert!(matches!(p.validate(), Err(ParamError::UniformLaw { .. })));
    }

    #[test]
    fn constant_law_moment_is_a_plain_power() {
        let law = CellularPowerLaw::Constant(Power::from_dbm(23.0));
        let m = law.fractional_moment(4.0);
        assert_relative_eq!(m, 0.199_526_231_496_888f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn uniform_law_closed_form_matches_quadrature() {
        let law = CellularPowerLaw::UniformDbm { lo_dbm: 0.0, hi_dbm: 23.0 };
        for alpha in [2.5, 3.0, 4.0, 5.5] {
            let exact = law.fractional_moment(alpha);
            let quad = law.fractional_moment_by_quadrature(alpha).unwrap();
            assert_relative_eq!(exact, quad, max_relative = 1e-10);
        }
    }

    #[test]
    fn uniform_law_collapses_to_constant_in_the_narrow_limit() {
        let narrow = CellularPowerLaw::UniformDbm { lo_dbm: 22.999, hi_dbm: 23.001 };
        let point = CellularPowerLaw::Constant(Power::from_dbm(23.0));
        assert_relative_eq!(
            narrow.fractional_moment(3.0),
            point.fractional_moment(3.0),
            max_relative = 1e-7
        );
    }
}
