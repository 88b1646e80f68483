//! Power quantities and the dBm/watt boundary.
//!
//! Every internal computation works in watts. Decibel-milliwatt values
//! appear only at the edges: configuration files, command-line flags and
//! output tables.

use serde::{Deserialize, Serialize};

/// Conversion offset between dB-watts and dB-milliwatts.
const DBM_OFFSET: f64 = 30.0;

/// A finite, non-negative power in watts.
///
/// The wrapper keeps unit conversions in one place so that the rest of the
/// crate never mixes linear and logarithmic scales by accident.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Power(f64);

impl Power {
    /// Wraps a value already expressed in watts.
    ///
    /// Returns `None` when the value is negative, NaN or infinite.
    pub fn from_watts(watts: f64) -> Option<Self> {
        if watts.is_finite() && watts >= 0.0 {
            Some(Power(watts))
        } else {
            None
        }
    }

    /// Converts a level in dBm to watts.
    pub fn from_dbm(dbm: f64) -> Self {
        Power(10f64.powf((dbm - DBM_OFFSET) / 10.0))
    }

    /// The value in watts.
    pub fn watts(self) -> f64 {
        self.0
    }

    /// The value in dBm. Zero watts maps to negative infinity.
    pub fn dbm(self) -> f64 {
        10.0 * self.0.log10() + DBM_OFFSET
    }
}

/// Converts a plain watt value to dBm without constructing a [`Power`].
pub fn watts_to_dbm(watts: f64) -> f64 {
    10.0 * watts.log10() + DBM_OFFSET
}

/// Converts a plain dBm value to watts without constructing a [`Power`].
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - DBM_OFFSET) / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn reference_points() {
        assert_relative_eq!(Power::from_dbm(0.0).watts(), 1e-3, max_relative = 1e-15);
        assert_relative_eq!(Power::from_dbm(30.0).watts(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(
            Power::from_dbm(23.0).watts(),
            0.199_526_231_496_887_97,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            Power::from_dbm(-100.0).watts(),
            1e-13,
            max_relative = 1e-15
        );
    }

    #[test]
    fn rejects_unphysical_values() {
        assert!(Power::from_watts(-1.0).is_none());
        assert!(Power::from_watts(f64::NAN).is_none());
        assert!(Power::from_watts(f64::INFINITY).is_none());
        assert!(Power::from_watts(0.0).is_some());
    }

    #[test]
    fn zero_watts_is_minus_infinity_dbm() {
        assert_eq!(Power::from_watts(0.0).unwrap().dbm(), f64::NEG_INFINITY);
    }

    proptest! {
        #[test]
        fn dbm_round_trip(dbm in -120.0f64..60.0) {
            let back = Power::from_dbm(dbm).dbm();
            prop_assert!((back - dbm).abs() <= 1e-12 * dbm.abs().max(1.0));
        }

        #[test]
        fn watts_round_trip(log_w in -15.0f64..3.0) {
            let w = 10f64.powf(log_w);
            let back = dbm_to_watts(watts_to_dbm(w));
            prop_assert!((back - w).abs() <= 1e-12 * w);
        }
    }
}
