//! Deterministic file writers: CSV curves and JSON metadata/reports.
//!
//! All numeric formatting is fixed-width-exponent style so re-running
//! with the same configuration reproduces files byte for byte.

use crate::CliError;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

/// The analytic columns evaluated on one power grid.
pub struct CurveColumns {
    /// Grid in dBm.
    pub p_dbm: Vec<f64>,
    /// Cap-constrained distribution.
    pub exact: Vec<f64>,
    /// Interference-limited closed form.
    pub il: Vec<f64>,
    /// Upper bound, clipped to 1; NaN where the bound degenerates
    /// (zero-noise profiles).
    pub bound: Vec<f64>,
}

/// Writes the curve CSV with the fixed header
/// `p_dBm,cdf_exact,cdf_il,cdf_bound[,cdf_empirical]`.
pub fn write_curve_csv(
    path: &Path,
    columns: &CurveColumns,
    empirical: Option<&[f64]>,
) -> Result<(), CliError> {
    let mut out = String::new();
    out.push_str("p_dBm,cdf_exact,cdf_il,cdf_bound");
    if empirical.is_some() {
        out.push_str(",cdf_empirical");
    }
    out.push('\n');
    for i in 0..columns.p_dbm.len() {
        out.push_str(&format!(
            "{:.6},{:.10e},{:.10e},{:.10e}",
            columns.p_dbm[i], columns.exact[i], columns.il[i], columns.bound[i]
        ));
        if let Some(emp) = empirical {
            out.push_str(&format!(",{:.10e}", emp[i]));
        }
        out.push('\n');
    }
    write_atomic(path, out.as_bytes())
}

/// Serializes a report as pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Config(format!("serializing {}: {e}", path.display())))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let mut f = std::fs::File::create(path)
        .map_err(|e| CliError::Config(format!("cannot create {}: {e}", path.display())))?;
    f.write_all(bytes)
        .map_err(|e| CliError::Config(format!("writing {}: {e}", path.display())))?;
    Ok(())
}

/// Per-sweep-point metadata sidecar for analytic outputs.
#[derive(Debug, Serialize)]
pub struct CurveMetadata {
    pub alpha: f64,
    pub beta_d_db: f64,
    pub e_d: f64,
    pub e_c: f64,
    pub residual: f64,
    pub iterations: u32,
    pub master_seed: u64,
    pub config_hash: String,
}

/// Summary of one simulated sweep point.
#[derive(Debug, Serialize)]
pub struct SweepPointReport {
    pub alpha: f64,
    pub beta_d_db: f64,
    /// "ok", or "warning-low-convergence" below 50% converged drops.
    pub status: String,
    pub ks_distance: f64,
    /// Largest pointwise gap between the upper bound and the exact curve
    /// (NaN when the bound degenerates).
    pub max_bound_gap: f64,
    pub pooled_links: usize,
    pub fraction_converged: f64,
    pub mean_iterations: f64,
    pub fraction_capped: f64,
    pub e_d: f64,
}

/// Top-level simulation comparison report.
#[derive(Debug, Serialize)]
pub struct ComparisonReport {
    pub master_seed: u64,
    pub config_hash: String,
    pub runtime_seconds: f64,
    pub points: Vec<SweepPointReport>,
}

/// One validation check in machine-readable form.
#[derive(Debug, Serialize)]
pub struct CheckReportLine {
    pub name: String,
    pub status: String,
    pub measured: f64,
    pub threshold: f64,
    pub detail: String,
}

/// Deterministic per-sweep-point file stem, e.g. `a3.00_b-10.0`.
pub fn sweep_stem(alpha: f64, beta_db: f64) -> String {
    format!("a{alpha:.2}_b{beta_db:.1}")
}
