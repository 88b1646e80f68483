//! Distributed SINR-target power control with a hard transmit cap.
//!
//! Each link repeatedly moves its power toward the value that would meet
//! the SINR target against the interference it currently measures:
//! `p <- (1 - gamma) p + gamma * beta * (I + sigma2) / a_own`, clamped to
//! the cap. The target map is a standard interference function, so with
//! positive noise the fixed point is unique and the iteration converges
//! to it from any start. Starting below the fixed point the iterates
//! increase monotonically and their distance to it shrinks no faster
//! than `(1 - gamma)` per step; the damping factor models the cautious
//! first-order update of practical closed-loop control.

use super::realization::Realization;
use crate::params::NetworkParams;

/// Cap proximity treated as "sitting at the cap" when classifying links.
const CAP_EPS: f64 = 1e-12;

/// Initial power assignment.
#[derive(Debug, Clone, PartialEq)]
pub enum InitMode {
    /// Power that would meet the target against the interference measured
    /// before any device transmits (cellular plus noise), clamped to the
    /// cap. This is what a device can actually measure at admission.
    Measured,
    /// The same constant for every link, in watts.
    Constant(f64),
    /// Explicit per-link powers, for experiments and tests.
    Given(Vec<f64>),
}

/// Iteration knobs.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerControlOptions {
    /// Update damping in (0, 1].
    pub gamma: f64,
    /// Relative SINR tolerance that counts as converged.
    pub tolerance: f64,
    pub max_iterations: u32,
    pub init: InitMode,
}

impl Default for PowerControlOptions {
    fn default() -> Self {
        PowerControlOptions {
            gamma: 0.06,
            tolerance: 1e-2,
            max_iterations: 1000,
            init: InitMode::Measured,
        }
    }
}

/// Final state of one power-control run.
#[derive(Debug, Clone)]
pub struct PowerControlOutcome {
    pub powers: Vec<f64>,
    pub sinrs: Vec<f64>,
    /// Whether every link settled (on target, or pinned at the cap below
    /// target) within the iteration budget.
    pub converged: bool,
    /// Iterations actually performed.
    pub iterations: u32,
    /// Links sitting at the cap.
    pub capped: Vec<bool>,
}

/// One synchronous update of every link, returning the new powers.
pub fn power_control_step(
    real: &Realization,
    params: &NetworkParams,
    gamma: f64,
    powers: &[f64],
) -> Vec<f64> {
    let p_max = params.p_max.watts();
    (0..real.n_links())
        .map(|i| {
            let measured = real.interference(powers, i) + params.sigma2;
            let target = params.beta_d * measured / real.own_attenuation(i);
            ((1.0 - gamma) * powers[i] + gamma * target).min(p_max)
        })
        .collect()
}

/// Runs power control to convergence or budget exhaustion.
pub fn run_power_control(
    real: &Realization,
    params: &NetworkParams,
    opts: &PowerControlOptions,
) -> PowerControlOutcome {
    assert!(opts.gamma > 0.0 && opts.gamma <= 1.0, "gamma must be in (0, 1]");
    let n = real.n_links();
    let p_max = params.p_max.watts();

    let mut powers: Vec<f64> = match &opts.init {
        InitMode::Measured => (0..n)
            .map(|i| {
                let pre = real.cellular_interference(i) + params.sigma2;
                (params.beta_d * pre / real.own_attenuation(i)).min(p_max)
            })
            .collect(),
        InitMode::Constant(p) => {
            assert!(*p > 0.0 && *p <= p_max, "constant init must lie in (0, p_max]");
            vec![*p; n]
        }
        InitMode::Given(p) => {
            assert_eq!(p.len(), n, "explicit init must cover every link");
            p.clone()
        }
    };

    let settled = |powers: &[f64], sinrs: &[f64]| -> bool {
        sinrs.iter().zip(powers).all(|(&s, &p)| {
            let on_target = (s - params.beta_d).abs() <= opts.tolerance * params.beta_d;
            let pinned = p >= p_max * (1.0 - CAP_EPS) && s < params.beta_d * (1.0 + opts.tolerance);
            on_target || pinned
        })
    };

    let mut sinrs: Vec<f64> =
        (0..n).map(|i| real.sinr(&powers, i, params.sigma2)).collect();
    let mut iterations = 0;
    let mut converged = settled(&powers, &sinrs);
    while !converged && iterations < opts.max_iterations {
        powers = power_control_step(real, params, opts.gamma, &powers);
        iterations += 1;
        sinrs = (0..n).map(|i| real.sinr(&powers, i, params.sigma2)).collect();
        converged = settled(&powers, &sinrs);
    }

    let capped = powers.iter().map(|&p| p >= p_max * (1.0 - CAP_EPS)).collect();
    PowerControlOutcome { powers, sinrs, converged, iterations, capped }
}
