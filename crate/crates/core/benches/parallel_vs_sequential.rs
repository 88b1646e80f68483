//! Throughput of the batch simulator and the curve evaluator, with inline
//! single-threaded baselines doing identical work.
//!
//! Under the default `parallel` feature the library paths fan out over
//! rayon, so the `library` and `sequential_baseline` rows show the
//! speedup directly. Built with `--no-default-features` the library paths
//! are themselves sequential and the rows should coincide; criterion's
//! saved baselines also make the two feature builds comparable across
//! runs of `cargo bench`.

use criterion::{criterion_group, criterion_main, Criterion};
use d2d_power::analytic::{compute_curve, solve_equilibrium, SolverOptions};
use d2d_power::curve::{log_grid_dbm, CurveKind};
use d2d_power::params::NetworkParams;
use d2d_power::sim::{
    run_drops, run_power_control, DropSummary, Hexagon, LinkRecord, Realization, RunOptions,
};
use std::hint::black_box;

fn cell() -> Hexagon {
    Hexagon::from_inter_site_distance(500.0)
}

fn sequential_drops(params: &NetworkParams, cell: Hexagon, opts: &RunOptions) -> Vec<DropSummary> {
    let central = cell.scaled(1.0 / 3f64.sqrt());
    (0..opts.drops)
        .map(|trial| {
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
        .collect()
}

fn bench_drop_batch(c: &mut Criterion) {
    let params = NetworkParams::default();
    let opts = RunOptions { drops: 32, ..RunOptions::default() };
    let mut group = c.benchmark_group("drop_batch_32");
    group.sample_size(10);
    group.bench_function("library", |b| {
        b.iter(|| black_box(run_drops(&params, cell(), &opts)))
    });
    group.bench_function("sequential_baseline", |b| {
        b.iter(|| black_box(sequential_drops(&params, cell(), &opts)))
    });
    group.finish();
}

fn bench_curve(c: &mut Criterion) {
    let params = NetworkParams::default();
    let m = solve_equilibrium(&params, &SolverOptions::default()).unwrap();
    let grid = log_grid_dbm(-60.0, params.p_max.dbm(), 200);
    let mut group = c.benchmark_group("constrained_curve_200pt");
    group.bench_function("library", |b| {
        b.iter(|| {
            black_box(
                compute_curve(&params, &m, &grid, CurveKind::AnalyticConstrained).unwrap(),
            )
        })
    });
    group.bench_function("sequential_baseline", |b| {
        b.iter(|| {
            let values: Vec<f64> = grid
                .iter()
                .map(|&p| {
                    d2d_power::analytic::cdf_constrained(&params, &m, p).unwrap()
                })
                .collect();
            black_box(values)
        })
    });
    group.finish();
}

criterion_group!(benches, bench_drop_batch, bench_curve);
criterion_main!(benches);
