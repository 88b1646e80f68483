//! Equilibrium transmit-power distribution of device-to-device links that
//! underlay a cellular uplink, with a Monte Carlo validation path.
//!
//! The analytic side ([`analytic`]) expresses the distribution of the
//! power a device pair transmits at the fixed point of SINR-target power
//! control over a Poisson network, solves the self-consistency of its
//! interference moment, and provides closed forms and a tail bound for
//! special regimes. The simulation side ([`sim`]) grows the same fixed
//! point link by link inside a hexagonal cell and produces empirical
//! distributions to hold against the formulas. [`validation`] packages
//! the cross-checks the command-line tool runs.
//!
//! Parallelism: grid evaluations and simulation drops run on a work-
//! stealing thread pool when the `parallel` feature (default) is active;
//! disabling it swaps in sequential loops with bit-identical results.

pub mod analytic;
pub mod curve;
pub mod par;
pub mod params;
pub mod quadrature;
pub mod roots;
pub mod sim;
pub mod special;
pub mod stats;
pub mod units;
pub mod validation;
