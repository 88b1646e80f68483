//! Batches of independent drops and pooled empirical distributions.

use super::geometry::Hexagon;
use super::power_control::{run_power_control, PowerControlOptions};
use super::realization::{PairingMode, Realization};
use crate::curve::{CdfCurve, CurveError, CurveKind};
use crate::params::NetworkParams;
use crate::stats::empirical_cdf;
use serde::{Deserialize, Serialize};

/// Configuration of a simulation batch.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub drops: u64,
    pub master_seed: u64,
    pub pairing: PairingMode,
    pub control: PowerControlOptions,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            drops: 200,
            master_seed: 20_260_814,
            pairing: PairingMode::RayleighPlacement,
            control: PowerControlOptions::default(),
        }
    }
}

/// Per-link outcome retained from a drop.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LinkRecord {
    pub power_w: f64,
    pub sinr: f64,
    pub capped: bool,
    /// Whether the receiver lies in the central third of the cell (the
    /// region where edge truncation of the interference field is mild).
    pub central: bool,
}

/// Outcome of one drop.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DropSummary {
    pub trial: u64,
    pub n_links: usize,
    pub converged: bool,
    pub iterations: u32,
    pub links: Vec<LinkRecord>,
}

/// Aggregate convergence behavior of a batch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStats {
    pub drops: u64,
    /// Drops with at least one link.
    pub populated_drops: u64,
    pub converged_drops: u64,
    pub total_links: u64,
    pub capped_links: u64,
    /// Iteration count quantiles over populated drops (0.5, 0.95, max).
    pub iterations_median: u32,
    pub iterations_p95: u32,
    pub iterations_max: u32,
}

/// Runs `opts.drops` independent drops (in parallel under the `parallel`
/// feature) and summarizes each.
pub fn run_drops(
    params: &NetworkParams,
    cell: Hexagon,
    opts: &RunOptions,
) -> Vec<DropSummary> {
    let central = cell.scaled(1.0 / 3f64.sqrt());
    crate::par::map_indexed(opts.drops as usize, |t| {
        let trial = t as u64;
        let real = Realization::sample(params, cell, opts.pairing, opts.master_seed, trial);
        let out = run_power_control(&real, params, &opts.control);
        let links = (0..real.n_links())
            .map(|i| LinkRecord {
                power_w: out.powers[i],
                sinr: out.sinrs[i],
                capped: out.capped[i],
                central: central.contains(real.rx[i]),
            })
            .collect();
        DropSummary {
            trial,
            n_links: real.n_links(),
            converged: out.converged,
            iterations: out.iterations,
            links,
        }
    })
}

/// Pools link powers from converged drops, sorted ascending.
///
/// `central_only` restricts to links whose receiver lies in the central
/// third of the cell.
pub fn pooled_powers(summaries: &[DropSummary], central_only: bool) -> Vec<f64> {
    let mut pool: Vec<f64> = summaries
        .iter()
        .filter(|s| s.converged)
        .flat_map(|s| s.links.iter())
        .filter(|l| !central_only || l.central)
        .map(|l| l.power_w)
        .collect();
    pool.sort_by(f64::total_cmp);
    pool
}

/// Empirical distribution of pooled powers on a grid (in watts).
pub fn empirical_curve(pooled_sorted: &[f64], grid_w: &[f64]) -> Result<CdfCurve, CurveError> {
    let values = grid_w
        .iter()
        .map(|&p| empirical_cdf(pooled_sorted, p))
        .collect();
    CdfCurve::new(CurveKind::Empirical, grid_w.to_vec(), values)
}

/// Summarizes convergence over a batch.
pub fn convergence_stats(summaries: &[DropSummary]) -> ConvergenceStats {
    let populated: Vec<&DropSummary> =
        summaries.iter().filter(|s| s.n_links > 0).collect();
    let mut iterations: Vec<u32> = populated.iter().map(|s| s.iterations).collect();
    iterations.sort_unstable();
    let quantile = |q: f64| -> u32 {
        if iterations.is_empty() {
            0
        } else {
            let idx = ((iterations.len() as f64 - 1.0) * q).ceil() as usize;
            iterations[idx]
        }
    };
    ConvergenceStats {
        drops: summaries.len() as u64,
        populated_drops: populated.len() as u64,
        converged_drops: summaries.iter().filter(|s| s.converged && s.n_links > 0).count()
            as u64,
        total_links: summaries.iter().map(|s| s.n_links as u64).sum(),
        capped_links: summaries
            .iter()
            .flat_map(|s| s.links.iter())
            .filter(|l| l.capped)
            .count() as u64,
        iterations_median: quantile(0.5),
        iterations_p95: quantile(0.95),
        iterations_max: iterations.last().copied().unwrap_or(0),
    }
}
