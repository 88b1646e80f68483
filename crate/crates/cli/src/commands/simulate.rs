//! `simulate`: Monte Carlo drops per sweep point, empirical curves next
//! to the analytic columns, and a comparison report.

use crate::config::ExperimentConfig;
use crate::output::{
    sweep_stem, write_curve_csv, write_json, ComparisonReport, SweepPointReport,
};
use crate::CliError;
use d2d_power::analytic::cdf_exact;
use d2d_power::sim::{convergence_stats, empirical_curve, pooled_powers, run_drops};
use d2d_power::stats::ks_statistic;
use std::path::Path;
use std::time::Instant;

pub fn run(cfg: &ExperimentConfig, out_dir: &Path) -> Result<(), CliError> {
    let started = Instant::now();
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Config(format!("cannot create {}: {e}", out_dir.display())))?;
    let run_opts = cfg.run_options()?;
    let cell = cfg.cell();
    let mut points = Vec::new();

    for (alpha, beta_db) in cfg.sweep() {
        let params = cfg.params_at(alpha, beta_db);
        let moments = super::equilibrium_at(&params, alpha, beta_db)?;
        let columns = super::analytic_columns(cfg, &params, &moments)?;

        let summaries = run_drops(&params, cell, &run_opts);
        let stats = convergence_stats(&summaries);
        let pool = pooled_powers(&summaries, cfg.central_third_only);
        if pool.is_empty() {
            return Err(CliError::Numerical(format!(
                "no converged links at alpha={alpha}, beta_d={beta_db} dB \
                 ({} of {} drops converged)",
                stats.converged_drops, stats.drops
            )));
        }
        let grid_w = cfg.grid_watts();
        let empirical = empirical_curve(&pool, &grid_w)
            .map_err(|e| CliError::Numerical(e.to_string()))?;

        let p_max = params.p_max.watts();
        let ks = ks_statistic(
            &pool,
            |p| if p >= p_max { 1.0 } else { cdf_exact(&params, &moments, p).unwrap_or(f64::NAN) },
            |p| cdf_exact(&params, &moments, p.min(p_max)).unwrap_or(f64::NAN),
        );
        let max_bound_gap = columns
            .bound
            .iter()
            .zip(&columns.exact)
            .map(|(b, e)| b - e)
            .fold(f64::NEG_INFINITY, f64::max);

        let fraction_converged = stats.converged_drops as f64 / stats.drops.max(1) as f64;
        let status = if fraction_converged < 0.5 {
            eprintln!(
                "warning: only {:.0}% of drops converged at alpha={alpha}, beta_d={beta_db} dB",
                100.0 * fraction_converged
            );
            "warning-low-convergence"
        } else {
            "ok"
        };

        let stem = sweep_stem(alpha, beta_db);
        let csv_path = out_dir.join(format!("simulate_{stem}.csv"));
        write_curve_csv(&csv_path, &columns, Some(empirical.values()))?;
        println!(
            "simulate alpha={alpha} beta_d={beta_db} dB: {} pooled links, KS={ks:.4} -> {}",
            pool.len(),
            csv_path.display()
        );

        points.push(SweepPointReport {
            alpha,
            beta_d_db: beta_db,
            status: status.into(),
            ks_distance: ks,
            max_bound_gap,
            pooled_links: pool.len(),
            fraction_converged,
            mean_iterations: mean_iterations(&summaries),
            fraction_capped: stats.capped_links as f64 / stats.total_links.max(1) as f64,
            e_d: moments.e_d,
        });
    }

    write_json(
        &out_dir.join("report.json"),
        &ComparisonReport {
            master_seed: cfg.master_seed,
            config_hash: cfg.hash(),
            runtime_seconds: started.elapsed().as_secs_f64(),
            points,
        },
    )
}

fn mean_iterations(summaries: &[d2d_power::sim::DropSummary]) -> f64 {
    let populated: Vec<_> = summaries.iter().filter(|s| s.n_links > 0).collect();
    if populated.is_empty() {
        return 0.0;
    }
    populated.iter().map(|s| s.iterations as f64).sum::<f64>() / populated.len() as f64
}
