//! Monte Carlo simulation of a single hexagonal cell.
//!
//! The pipeline is split into small, independently testable stages:
//!
//! * [`geometry`]: hexagon sampling, sector partitioning, nearest-neighbour
//!   distance draws.
//! * [`realization`]: one network drop with all random channel gains frozen.
//! * [`power_control`]: iterative target-tracking power updates on a drop.
//! * [`batch`]: seeded multi-drop runs and pooling into an empirical
//!   distribution.
//! * [`probe`]: direct Monte Carlo estimates of interference transforms on a
//!   fixed region, used to cross-check the analytic transform expressions.

pub mod batch;
pub mod geometry;
pub mod power_control;
pub mod probe;
pub mod realization;

pub use batch::{
    convergence_stats, empirical_curve, pooled_powers, run_drops, ConvergenceStats, DropSummary,
    LinkRecord, RunOptions,
};
pub use geometry::{rayleigh_nearest_distance, Hexagon, Point};
pub use power_control::{
    power_control_step, run_power_control, InitMode, PowerControlOptions, PowerControlOutcome,
};
pub use probe::{enlarged_region, estimate_transform, transform_samples, FieldSelect, ProbeEstimate};
pub use realization::{PairingMode, Realization};
