//! Experiment configuration: one flat TOML document in engineering units
//! (dBm, dB, meters). Every key has a default mirroring the reference
//! urban profile, so an empty document or no `--config` at all runs the
//! standard setup. Unknown keys are rejected rather than ignored.

use crate::CliError;
use d2d_power::params::{CellularPowerLaw, NetworkParams};
use d2d_power::sim::{Hexagon, PairingMode, PowerControlOptions, RunOptions};
use d2d_power::units::{dbm_to_watts, Power};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    /// Hexagonal cell size (corner-to-corner distance between sites).
    pub inter_site_distance_m: f64,
    /// Path-loss exponents to sweep.
    pub alpha: Vec<f64>,
    /// Device SINR targets to sweep, in dB.
    pub beta_d_db: Vec<f64>,
    /// Mean of the desired-link gain coefficient (absorbs the link-budget
    /// intercept).
    pub mu: f64,
    pub lambda_d_per_m2: f64,
    pub lambda_c_per_m2: f64,
    /// Noise power; `-inf` selects the interference-limited regime.
    pub noise_dbm: f64,
    pub p_max_dbm: f64,

    /// Cellular transmit-power law: "constant" or "uniform".
    pub cellular_law: String,
    pub cellular_power_dbm: f64,
    pub cellular_lo_dbm: f64,
    pub cellular_hi_dbm: f64,

    pub grid_min_dbm: f64,
    pub grid_max_dbm: f64,
    pub grid_points: usize,

    pub drops: u64,
    pub master_seed: u64,
    /// Power-control relaxation factor.
    pub gamma: f64,
    /// Relative SINR tolerance declaring a link on target.
    pub tolerance: f64,
    pub max_iterations: u32,
    /// Link pairing: "rayleigh" (receiver placed around its transmitter)
    /// or "mutual-nearest" (matching between two independent point sets).
    pub pairing: String,
    /// Pool only links whose receiver lies in the central third of the
    /// cell, away from boundary truncation.
    pub central_third_only: bool,
    /// Monte Carlo trials per interference-transform probe in `validate`.
    pub probe_trials: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            inter_site_distance_m: 500.0,
            alpha: vec![3.0],
            beta_d_db: vec![-10.0],
            mu: 1e-3,
            lambda_d_per_m2: 8e-4,
            lambda_c_per_m2: 0.0,
            noise_dbm: -100.0,
            p_max_dbm: 23.0,
            cellular_law: "constant".into(),
            cellular_power_dbm: 23.0,
            cellular_lo_dbm: 13.0,
            cellular_hi_dbm: 23.0,
            grid_min_dbm: -60.0,
            grid_max_dbm: 23.0,
            grid_points: 167,
            drops: 200,
            master_seed: 20_260_814,
            gamma: 0.06,
            tolerance: 1e-2,
            max_iterations: 1000,
            pairing: "rayleigh".into(),
            central_third_only: true,
            probe_trials: 2500,
        }
    }
}

impl ExperimentConfig {
    /// Reads and parses a configuration file; `None` yields the defaults.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(ExperimentConfig::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CliError::Config(format!("cannot read {}: {e}", p.display()))
                })?;
                toml::from_str(&text)
                    .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))
            }
        }
    }

    /// Checks every cross-field invariant; called after flag overrides.
    pub fn validate(&self) -> Result<(), CliError> {
        let fail = |msg: String| Err(CliError::Config(msg));
        if self.alpha.is_empty() || self.beta_d_db.is_empty() {
            return fail("alpha and beta_d_db sweeps must be non-empty".into());
        }
        if self.grid_points == 0 {
            return fail("grid_points must be at least 1".into());
        }
        if self.grid_points > 1 && !(self.grid_min_dbm < self.grid_max_dbm) {
            return fail(format!(
                "power grid must be strictly increasing: [{}, {}] dBm",
                self.grid_min_dbm, self.grid_max_dbm
            ));
        }
        if self.grid_max_dbm < self.p_max_dbm {
            return fail(format!(
                "power grid must cover the cap: grid_max_dbm = {} < p_max_dbm = {}",
                self.grid_max_dbm, self.p_max_dbm
            ));
        }
        if self.drops == 0 {
            return fail("drops must be at least 1".into());
        }
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return fail(format!("gamma must lie in (0, 1], got {}", self.gamma));
        }
        if !(self.tolerance > 0.0) {
            return fail(format!("tolerance must be positive, got {}", self.tolerance));
        }
        if self.max_iterations == 0 {
            return fail("max_iterations must be at least 1".into());
        }
        if self.probe_trials < 2 {
            return fail("probe_trials must be at least 2".into());
        }
        if !(self.inter_site_distance_m > 0.0) {
            return fail(format!(
                "inter_site_distance_m must be positive, got {}",
                self.inter_site_distance_m
            ));
        }
        self.pairing_mode()?;
        // Parameter-level restrictions (densities, exponent range, power
        // law) are checked per sweep point through the library.
        for &alpha in &self.alpha {
            for &beta_db in &self.beta_d_db {
                self.params_at(alpha, beta_db)
                    .validate()
                    .map_err(|e| CliError::Config(e.to_string()))?;
            }
        }
        Ok(())
    }

    pub fn params_at(&self, alpha: f64, beta_db: f64) -> NetworkParams {
        NetworkParams {
            lambda_c: self.lambda_c_per_m2,
            lambda_d: self.lambda_d_per_m2,
            alpha,
            mu: self.mu,
            beta_d: 10f64.powf(beta_db / 10.0),
            sigma2: dbm_to_watts(self.noise_dbm),
            p_max: Power::from_dbm(self.p_max_dbm),
            cellular_law: match self.cellular_law.as_str() {
                "uniform" => CellularPowerLaw::UniformDbm {
                    lo_dbm: self.cellular_lo_dbm,
                    hi_dbm: self.cellular_hi_dbm,
                },
                _ => CellularPowerLaw::Constant(Power::from_dbm(self.cellular_power_dbm)),
            },
        }
    }

    pub fn pairing_mode(&self) -> Result<PairingMode, CliError> {
        match self.pairing.as_str() {
            "rayleigh" => Ok(PairingMode::RayleighPlacement),
            "mutual-nearest" => Ok(PairingMode::MutualNearest),
            other => Err(CliError::Config(format!(
                "pairing must be \"rayleigh\" or \"mutual-nearest\", got \"{other}\""
            ))),
        }
    }

    pub fn cell(&self) -> Hexagon {
        Hexagon::from_inter_site_distance(self.inter_site_distance_m)
    }

    /// The power grid in watts (single-point grids sit at the top end).
    pub fn grid_watts(&self) -> Vec<f64> {
        if self.grid_points == 1 {
            vec![dbm_to_watts(self.grid_max_dbm)]
        } else {
            d2d_power::curve::log_grid_dbm(self.grid_min_dbm, self.grid_max_dbm, self.grid_points)
        }
    }

    pub fn run_options(&self) -> Result<RunOptions, CliError> {
        Ok(RunOptions {
            drops: self.drops,
            master_seed: self.master_seed,
            pairing: self.pairing_mode()?,
            control: PowerControlOptions {
                gamma: self.gamma,
                tolerance: self.tolerance,
                max_iterations: self.max_iterations,
                ..Default::default()
            },
        })
    }

    /// Sweep points in deterministic order (alpha-major).
    pub fn sweep(&self) -> Vec<(f64, f64)> {
        let mut points = Vec::with_capacity(self.alpha.len() * self.beta_d_db.len());
        for &a in &self.alpha {
            for &b in &self.beta_d_db {
                points.push((a, b));
            }
        }
        points
    }

    /// FNV-1a hash of the resolved configuration, identifying the exact
    /// effective setup (after flag overrides) in output metadata.
    pub fn hash(&self) -> String {
        let text = toml::to_string(self).expect("config serializes");
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for byte in text.as_bytes() {
            h ^= u64::from(*byte);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        format!("{h:016x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid_and_matches_the_library_defaults() {
        let cfg = ExperimentConfig::default();
        cfg.validate().unwrap();
        let params = cfg.params_at(cfg.alpha[0], cfg.beta_d_db[0]);
        assert_eq!(params, NetworkParams::default());
    }

    #[test]
    fn empty_document_equals_defaults() {
        let cfg: ExperimentConfig = toml::from_str("").unwrap();
        assert_eq!(cfg.hash(), ExperimentConfig::default().hash());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = toml::from_str::<ExperimentConfig>("grid_pints = 100").unwrap_err();
        assert!(err.to_string().contains("grid_pints"));
    }

    #[test]
    fn cross_field_invariants_are_enforced() {
        let mut cfg = ExperimentConfig { drops: 0, ..Default::default() };
        assert!(matches!(cfg.validate(), Err(CliError::Config(_))));
        cfg.drops = 1;
        cfg.grid_max_dbm = cfg.p_max_dbm - 1.0;
        assert!(matches!(cfg.validate(), Err(CliError::Config(_))));
        cfg.grid_max_dbm = cfg.p_max_dbm;
        cfg.alpha = vec![];
        assert!(matches!(cfg.validate(), Err(CliError::Config(_))));
    }

    #[test]
    fn zero_noise_spelling() {
        let cfg: ExperimentConfig = toml::from_str("noise_dbm = -inf").unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.params_at(3.0, -10.0).sigma2, 0.0);
    }

    #[test]
    fn hash_tracks_overrides() {
        let base = ExperimentConfig::default();
        let other = ExperimentConfig { master_seed: 1, ..Default::default() };
        assert_ne!(base.hash(), other.hash());
    }
}
