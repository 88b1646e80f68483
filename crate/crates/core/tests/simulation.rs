//! End-to-end simulator checks: init independence of the control fixed
//! point, a second full-pipeline distribution comparison, and the
//! structure of the mutual-nearest pairing mode.

use d2d_power::analytic::{cdf_exact, solve_equilibrium, SolverOptions};
use d2d_power::params::NetworkParams;
use d2d_power::sim::{
    pooled_powers, run_drops, run_power_control, Hexagon, InitMode, PairingMode,
    PowerControlOptions, Realization, RunOptions,
};
use d2d_power::stats::ks_statistic;

fn cell() -> Hexagon {
    Hexagon::from_inter_site_distance(500.0)
}

#[test]
fn zero_noise_fixed_point_is_init_independent_when_cellular_anchored() {
    // Without noise the cellular field supplies the baseline interference
    // that pins the fixed point; any starting vector must reach it.
    let params = NetworkParams { sigma2: 0.0, lambda_c: 1e-4, ..NetworkParams::default() };
    let real = Realization::sample(&params, cell(), PairingMode::RayleighPlacement, 5, 3);
    let n = real.n_links();
    assert!(n > 20, "want a busy drop, got {n} links");

    let p_max = params.p_max.watts();
    let inits = [
        vec![1e-9; n],
        vec![p_max / 2.0; n],
        (0..n).map(|i| p_max * (i + 1) as f64 / (n + 1) as f64).collect::<Vec<_>>(),
    ];
    let mut reference: Option<Vec<f64>> = None;
    for init in inits {
        let out = run_power_control(
            &real,
            &params,
            &PowerControlOptions {
                tolerance: 1e-7,
                max_iterations: 500_000,
                init: InitMode::Given(init),
                ..Default::default()
            },
        );
        assert!(out.converged);
        for i in 0..n {
            if !out.capped[i] {
                let rel = (out.sinrs[i] - params.beta_d).abs() / params.beta_d;
                assert!(rel <= 2e-7, "link {i} off target by {rel}");
            }
        }
        if let Some(ref first) = reference {
            for i in 0..n {
                let rel = (out.powers[i] - first[i]).abs() / first[i];
                assert!(rel <= 1e-4, "init changed the fixed point at link {i} by {rel}");
            }
        } else {
            reference = Some(out.powers);
        }
    }
}

#[test]
fn quartic_pipeline_matches_the_analytic_distribution() {
    let params = NetworkParams { alpha: 4.0, ..NetworkParams::default() };
    let opts = RunOptions { drops: 100, master_seed: 7, ..RunOptions::default() };
    let pool = pooled_powers(&run_drops(&params, cell(), &opts), true);
    assert!(pool.len() > 4000);

    let m = solve_equilibrium(&params, &SolverOptions::default()).unwrap();
    let p_max = params.p_max.watts();
    let d = ks_statistic(
        &pool,
        |p| if p >= p_max { 1.0 } else { cdf_exact(&params, &m, p).unwrap() },
        |p| cdf_exact(&params, &m, p.min(p_max)).unwrap(),
    );
    assert!(d <= 0.05, "KS distance {d} at a quartic exponent");
}

#[test]
fn mutual_nearest_pairs_really_are_mutually_nearest() {
    let params = NetworkParams::default();
    let real = Realization::sample(&params, cell(), PairingMode::MutualNearest, 11, 0);
    let n = real.n_links();
    assert!(n > 10, "pairing kept too few links: {n}");

    for i in 0..n {
        let d_own = real.tx[i].distance(real.rx[i]);
        assert!((d_own - real.pair_distance[i]).abs() <= 1e-12 * d_own.max(1.0));
        assert!(cell().contains(real.tx[i]) && cell().contains(real.rx[i]));
        // Matched pairs stay mutually nearest within the matched subset:
        // a closer foreign endpoint would have blocked this match.
        for j in 0..n {
            if i != j {
                assert!(real.tx[i].distance(real.rx[j]) >= d_own);
                assert!(real.tx[j].distance(real.rx[i]) >= d_own);
            }
        }
    }
}

#[test]
fn fully_degenerate_profile_reports_non_convergence_instead_of_panicking() {
    // No noise and no cellular field leaves nothing to anchor the
    // iteration: powers stay at zero and the outcome must say so.
    let params = NetworkParams { sigma2: 0.0, lambda_c: 0.0, ..NetworkParams::default() };
    let real = Realization::sample(&params, cell(), PairingMode::RayleighPlacement, 5, 3);
    let out = run_power_control(
        &real,
        &params,
        &PowerControlOptions { max_iterations: 50, ..Default::default() },
    );
    assert!(!out.converged);
    assert!(out.powers.iter().all(|&p| p == 0.0));
}
