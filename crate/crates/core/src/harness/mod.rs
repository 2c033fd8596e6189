//! Configuration, seeded Monte Carlo sweeps and the command-line front end.

pub mod cli;
mod config;
mod experiment;
mod metrics;
pub mod scenario;

pub use config::ExperimentConfig;
pub use experiment::{
    analyze, build_family, channel_seed, noise_seed, run_experiment, run_trial, AggregateResult,
    CellSummary, Setup, TrialResult, DETAIL_HEADER, EXACT_RECOVERY_TOL, SUMMARY_HEADER,
};
pub use metrics::{compute_metrics, Metrics};
