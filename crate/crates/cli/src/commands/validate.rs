//! `validate`: runs the cross-validation suite at the first sweep point,
//! prints one line per check, and writes a machine-readable report.

use crate::config::ExperimentConfig;
use crate::output::{write_json, CheckReportLine};
use crate::CliError;
use d2d_power::validation::{all_passed, run_validation, CheckStatus, FaultInjection, ValidationOptions};
use std::path::Path;

pub fn run(cfg: &ExperimentConfig, out_dir: &Path, inject_fault: bool) -> Result<(), CliError> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Config(format!("cannot create {}: {e}", out_dir.display())))?;
    let params = cfg.params_at(cfg.alpha[0], cfg.beta_d_db[0]);
    let opts = ValidationOptions {
        fault: if inject_fault {
            FaultInjection::FlipInterferenceSign
        } else {
            FaultInjection::None
        },
        run: cfg.run_options()?,
        probe_trials: cfg.probe_trials,
        ..Default::default()
    };
    let results = run_validation(&params, cfg.cell(), &opts);

    for r in &results {
        println!("{r}");
    }
    write_json(
        &out_dir.join("validate.json"),
        &results
            .iter()
            .map(|r| CheckReportLine {
                name: r.name.to_string(),
                status: r.status.to_string(),
                measured: r.measured,
                threshold: r.threshold,
                detail: r.detail.clone(),
            })
            .collect::<Vec<_>>(),
    )?;

    if all_passed(&results) {
        Ok(())
    } else {
        let failing: Vec<&str> = results
            .iter()
            .filter(|r| r.status == CheckStatus::Fail)
            .map(|r| r.name)
            .collect();
        Err(CliError::Validation(failing.join(", ")))
    }
}
