//! One sampled network drop: positions, pairings and channel gains.

use super::geometry::{rayleigh_nearest_distance, Hexagon, Point};
use crate::params::{CellularPowerLaw, NetworkParams};
use crate::units::Power;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Exp};

/// How receiver positions are attached to transmitters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum PairingMode {
    /// Each receiver sits at a nearest-neighbor-law distance from its
    /// transmitter, in a uniform direction, redrawn until it falls inside
    /// the cell. Matches the distance law assumed by the formulas.
    RayleighPlacement,
    /// Transmitters and receivers are two independent Poisson processes;
    /// only mutually nearest pairs become links. A stress variant with a
    /// different (thinned) pair-distance law.
    MutualNearest,
}

/// A fully sampled drop: geometry plus every channel coefficient needed
/// to run power control. Attenuations are gain times distance loss, so
/// the SINR of link `i` under powers `p` is
/// `p[i] a_own[i] / (sum_j p[j] a_cross[i][j] + I_cell[i] + sigma2)`.
#[derive(Debug, Clone)]
pub struct Realization {
    pub cell: Hexagon,
    pub master_seed: u64,
    pub trial: u64,
    pub cellular_positions: Vec<Point>,
    pub cellular_powers: Vec<f64>,
    pub tx: Vec<Point>,
    pub rx: Vec<Point>,
    /// Transmitter-to-own-receiver distances.
    pub pair_distance: Vec<f64>,
    /// Desired-link attenuation `g_i d_ii^(-alpha)` with `g_i ~ Exp(mu)`.
    own_attenuation: Vec<f64>,
    /// Cross attenuations, row-major `[rx i][tx j]`, zero diagonal,
    /// unit-mean fading.
    cross_attenuation: Vec<f64>,
    /// Cellular interference received at each device receiver (fixed
    /// through power-control iterations).
    cellular_interference: Vec<f64>,
}

impl Realization {
    /// Samples a drop. The generator is keyed by `(master_seed, trial)`
    /// through independent ChaCha streams, so drops are reproducible and
    /// mutually independent regardless of scheduling order.
    pub fn sample(
        params: &NetworkParams,
        cell: Hexagon,
        pairing: PairingMode,
        master_seed: u64,
        trial: u64,
    ) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(master_seed);
        rng.set_stream(trial);

        // Cellular field with per-transmitter powers.
        let cellular_positions = cell.sample_ppp(params.lambda_c, &mut rng);
        let cellular_powers: Vec<f64> = cellular_positions
            .iter()
            .map(|_| match params.cellular_law {
                CellularPowerLaw::Constant(p) => p.watts(),
                CellularPowerLaw::UniformDbm { lo_dbm, hi_dbm } => {
                    Power::from_dbm(rng.gen_range(lo_dbm..hi_dbm)).watts()
                }
            })
            .collect();

        // Device pairs.
        let (tx, rx) = match pairing {
            PairingMode::RayleighPlacement => {
                let tx = cell.sample_ppp(params.lambda_d, &mut rng);
                let rx = tx
                    .iter()
                    .map(|&t| loop {
                        let d = rayleigh_nearest_distance(params.lambda_d, &mut rng);
                        let angle = rng.gen_range(0.0..std::f64::consts::TAU);
                        let candidate =
                            Point::new(t.x + d * angle.cos(), t.y + d * angle.sin());
                        if cell.contains(candidate) {
                            break candidate;
                        }
                    })
                    .collect();
                (tx, rx)
            }
            PairingMode::MutualNearest => {
                let tx_all = cell.sample_ppp(params.lambda_d, &mut rng);
                let rx_all = cell.sample_ppp(params.lambda_d, &mut rng);
                mutual_nearest_pairs(&tx_all, &rx_all)
            }
        };
        let n = tx.len();
        let pair_distance: Vec<f64> = tx.iter().zip(&rx).map(|(t, r)| t.distance(*r)).collect();

        // Channel draws, in a frozen order: own gains, then the cross
        // matrix row by row, then cellular links per receiver.
        let own = Exp::new(1.0 / params.mu).expect("positive rate");
        let unit = Exp::new(1.0).expect("positive rate");
        let own_attenuation: Vec<f64> = (0..n)
            .map(|i| own.sample(&mut rng) * pair_distance[i].powf(-params.alpha))
            .collect();
        let mut cross_attenuation = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let d = rx[i].distance(tx[j]);
                debug_assert!(d > 0.0, "coincident interferer and receiver");
                cross_attenuation[i * n + j] = unit.sample(&mut rng) * d.powf(-params.alpha);
            }
        }
        let cellular_interference: Vec<f64> = (0..n)
            .map(|i| {
                cellular_positions
                    .iter()
                    .zip(&cellular_powers)
                    .map(|(c, &p)| {
                        let d = rx[i].distance(*c);
                        debug_assert!(d > 0.0, "coincident cellular transmitter and receiver");
                        p * unit.sample(&mut rng) * d.powf(-params.alpha)
                    })
                    .sum()
            })
            .collect();

        Realization {
            cell,
            master_seed,
            trial,
            cellular_positions,
            cellular_powers,
            tx,
            rx,
            pair_distance,
            own_attenuation,
            cross_attenuation,
            cellular_interference,
        }
    }

    pub fn n_links(&self) -> usize {
        self.tx.len()
    }

    /// Desired-link attenuation of link `i`.
    pub fn own_attenuation(&self, i: usize) -> f64 {
        self.own_attenuation[i]
    }

    /// Interference at receiver `i` from the cellular field alone, i.e.
    /// before any device transmits.
    pub fn cellular_interference(&self, i: usize) -> f64 {
        self.cellular_interference[i]
    }

    /// Total interference at receiver `i` under device powers `p`.
    pub fn interference(&self, powers: &[f64], i: usize) -> f64 {
        let n = self.n_links();
        let row = &self.cross_attenuation[i * n..(i + 1) * n];
        let device: f64 = row.iter().zip(powers).map(|(a, p)| a * p).sum();
        device + self.cellular_interference[i]
    }

    /// SINR of link `i` under device powers `p`.
    pub fn sinr(&self, powers: &[f64], i: usize, sigma2: f64) -> f64 {
        powers[i] * self.own_attenuation[i] / (self.interference(powers, i) + sigma2)
    }
}

/// Pairs each transmitter with its nearest receiver and keeps only the
/// mutual choices, each receiver used at most once.
fn mutual_nearest_pairs(tx_all: &[Point], rx_all: &[Point]) -> (Vec<Point>, Vec<Point>) {
    if tx_all.is_empty() || rx_all.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let nearest_rx: Vec<usize> = tx_all
        .iter()
        .map(|t| {
            rx_all
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| t.distance(**a).total_cmp(&t.distance(**b)))
                .map(|(i, _)| i)
                .expect("non-empty receiver set")
        })
        .collect();
    let nearest_tx: Vec<usize> = rx_all
        .iter()
        .map(|r| {
            tx_all
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| r.distance(**a).total_cmp(&r.distance(**b)))
                .map(|(i, _)| i)
                .expect("non-empty transmitter set")
        })
        .collect();
    let mut tx = Vec::new();
    let mut rx = Vec::new();
    for (i, &j) in nearest_rx.iter().enumerate() {
        if nearest_tx[j] == i && tx_all[i].distance(rx_all[j]) > 0.0 {
            tx.push(tx_all[i]);
            rx.push(rx_all[j]);
        }
    }
    (tx, rx)
}
