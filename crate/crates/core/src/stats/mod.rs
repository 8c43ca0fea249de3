//! Simulation of multinomial experiments, the homogeneity statistic `H`,
//! and a Monte Carlo harness for checking the exact layer.
//!
//! Random streams come from ChaCha8 (`rand_chacha`), keyed by
//! `seed_from_u64(seed)` with the stream id set to the replication index.

mod experiment;
mod monte_carlo;
mod sampler;

pub use experiment::{h_from_counts, h_statistic, simulate_experiment, ExperimentResult};
pub use monte_carlo::{monte_carlo_joint, MonteCarloReport, MonteCarloSummary, SimulationConfig};
pub use sampler::{replication_rng, CategorySampler};
