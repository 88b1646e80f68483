//! Tabulated distribution curves over a transmit-power grid.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which quantity a [`CdfCurve`] tabulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveKind {
    /// Equilibrium power distribution, no transmit cap.
    Analytic,
    /// Equilibrium power distribution with the cap atom at `p_max`.
    AnalyticConstrained,
    /// Zero-noise (interference-limited) closed form.
    InterferenceLimited,
    /// Quartic-exponent closed form via the complementary error function.
    LossyErfc,
    /// Same, with the two-exponential erfc surrogate.
    LossyErfcApprox,
    /// Analytic upper bound on the distribution (not itself a CDF).
    UpperBound,
    /// Empirical distribution of pooled simulated powers.
    Empirical,
}

impl CurveKind {
    /// Whether values of this kind must be nondecreasing in `p`.
    ///
    /// True for every kind that is a distribution function; the upper
    /// bound is an envelope and carries no monotonicity guarantee.
    pub fn is_distribution(self) -> bool {
        !matches!(self, CurveKind::UpperBound)
    }
}

/// Structural defects in a tabulated curve.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("grid and values have different lengths: {grid} vs {values}")]
    LengthMismatch { grid: usize, values: usize },
    #[error("grid must be strictly increasing and positive (index {0})")]
    GridOrder(usize),
    #[error("value {value} at index {index} outside [0, 1]")]
    ValueRange { index: usize, value: f64 },
    #[error("distribution values decrease at index {0}")]
    NotMonotone(usize),
}

/// A curve sampled on a strictly increasing grid of powers in watts.
///
/// Distribution-kind curves keep their values in [0, 1] and nondecreasing;
/// both properties are checked at construction. Values are stored clipped
/// to [0, 1] for the [`CurveKind::UpperBound`] kind, which can exceed one
/// in its raw form at small powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdfCurve {
    kind: CurveKind,
    grid_w: Vec<f64>,
    values: Vec<f64>,
}

impl CdfCurve {
    /// Builds a curve, clipping bound-kind values to [0, 1] and validating
    /// the structural invariants.
    pub fn new(kind: CurveKind, grid_w: Vec<f64>, mut values: Vec<f64>) -> Result<Self, CurveError> {
        if grid_w.len() != values.len() {
            return Err(CurveError::LengthMismatch { grid: grid_w.len(), values: values.len() });
        }
        for (i, w) in grid_w.windows(2).enumerate() {
            if !(w[0] < w[1]) {
                return Err(CurveError::GridOrder(i + 1));
            }
        }
        if let Some(&first) = grid_w.first() {
            if !(first > 0.0) {
                return Err(CurveError::GridOrder(0));
            }
        }
        if kind == CurveKind::UpperBound {
            for v in &mut values {
                *v = v.min(1.0);
            }
        }
        for (i, &v) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(CurveError::ValueRange { index: i, value: v });
            }
            if kind.is_distribution() && i > 0 && v < values[i - 1] - 1e-12 {
                return Err(CurveError::NotMonotone(i));
            }
        }
        Ok(CdfCurve { kind, grid_w, values })
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    /// Grid in watts.
    pub fn grid_watts(&self) -> &[f64] {
        &self.grid_w
    }

    /// Curve values, same order as the grid.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.grid_w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid_w.is_empty()
    }

    /// Largest absolute difference to another curve on the same grid.
    ///
    /// Panics if the grids differ; curves compared this way are always
    /// built from one shared grid.
    pub fn max_abs_difference(&self, other: &CdfCurve) -> f64 {
        assert_eq!(self.grid_w, other.grid_w, "curves must share a grid");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Builds a logarithmically spaced power grid between two dBm endpoints
/// (inclusive), returned in watts.
pub fn log_grid_dbm(min_dbm: f64, max_dbm: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2, "a grid needs at least two points");
    assert!(min_dbm < max_dbm, "grid endpoints must be ordered");
    let step = (max_dbm - min_dbm) / (points - 1) as f64;
    (0..points)
        .map(|i| crate::units::dbm_to_watts(min_dbm + step * i as f64))
        .collect()
}
