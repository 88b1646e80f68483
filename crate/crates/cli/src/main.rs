//! Command-line front end: analytic curves, Monte Carlo simulation and
//! comparison, and the self-validation suite, all driven by one flat
//! TOML configuration.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};
use config::ExperimentConfig;
use std::path::PathBuf;
use std::process::ExitCode;
use thiserror::Error;

/// Exit code contract: 0 success, 1 validation failure, 2 configuration
/// error, 3 numerical non-convergence.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "d2dpower",
    version,
    about = "Equilibrium transmit-power distribution of device-to-device links \
             under a cellular underlay: analytic curves, Monte Carlo \
             simulation, and cross-validation"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// TOML experiment configuration; defaults apply when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory for CSV and report files.
    #[arg(long, global = true, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    /// Overrides the master seed from the configuration.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Overrides the number of Monte Carlo drops.
    #[arg(long, global = true, value_name = "N")]
    drops: Option<u64>,
    /// Caps the worker-thread count (default: one per core).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write analytic distribution curves (exact, interference-limited,
    /// upper bound) per sweep point.
    Analytic,
    /// Run Monte Carlo drops, write empirical curves next to the analytic
    /// ones, and produce a comparison report.
    Simulate,
    /// Run the cross-validation suite and report each invariant.
    Validate {
        /// Corrupt the analytic side on purpose (self-test of the
        /// harness; the dominance check must fail).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads(cli.threads)?;
    let mut cfg = ExperimentConfig::load(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        cfg.master_seed = seed;
    }
    if let Some(drops) = cli.drops {
        cfg.drops = drops;
    }
    cfg.validate()?;
    match cli.command {
        Cmd::Analytic => commands::analytic::run(&cfg, &cli.out),
        Cmd::Simulate => commands::simulate::run(&cfg, &cli.out),
        Cmd::Validate { inject_fault } => commands::validate::run(&cfg, &cli.out, inject_fault),
    }
}

#[cfg(feature = "parallel")]
fn init_threads(threads: Option<usize>) -> Result<(), CliError> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn init_threads(threads: Option<usize>) -> Result<(), CliError> {
    if threads.is_some() {
        eprintln!("note: built without the parallel feature; --threads has no effect");
    }
    Ok(())
}
