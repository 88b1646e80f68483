//! Subcommand implementations. Each orchestrates the library end to end
//! and owns its output files; all writes happen after computation from
//! the main thread.

pub mod analytic;
pub mod simulate;
pub mod validate;

use crate::config::ExperimentConfig;
use crate::output::CurveColumns;
use crate::CliError;
use d2d_power::analytic::{
    cdf_upper_bound, compute_curve, solve_equilibrium, EquilibriumMoments, SolverOptions,
};
use d2d_power::curve::CurveKind;
use d2d_power::params::NetworkParams;
use d2d_power::units::watts_to_dbm;

/// Solves the equilibrium for one sweep point, mapping non-convergence to
/// the numerical exit path with the residual in the message.
fn equilibrium_at(
    params: &NetworkParams,
    alpha: f64,
    beta_db: f64,
) -> Result<EquilibriumMoments, CliError> {
    solve_equilibrium(params, &SolverOptions::default()).map_err(|e| {
        CliError::Numerical(format!("equilibrium at alpha={alpha}, beta_d={beta_db} dB: {e}"))
    })
}

/// Evaluates the three analytic columns on the configured grid.
fn analytic_columns(
    cfg: &ExperimentConfig,
    params: &NetworkParams,
    moments: &EquilibriumMoments,
) -> Result<CurveColumns, CliError> {
    let grid_w = cfg.grid_watts();
    let exact = compute_curve(params, moments, &grid_w, CurveKind::AnalyticConstrained)
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    let il = compute_curve(params, moments, &grid_w, CurveKind::InterferenceLimited)
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    // The bound degenerates without noise; emit NaN there instead of
    // failing the whole sweep (the CSV contract documents this).
    let bound: Vec<f64> = grid_w
        .iter()
        .map(|&p| match cdf_upper_bound(params, moments, p) {
            Ok(v) => v.min(1.0),
            Err(_) => f64::NAN,
        })
        .collect();
    Ok(CurveColumns {
        p_dbm: grid_w.iter().copied().map(watts_to_dbm).collect(),
        exact: exact.values().to_vec(),
        il: il.values().to_vec(),
        bound,
    })
}
