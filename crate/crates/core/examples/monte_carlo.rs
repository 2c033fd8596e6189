//! A reduced MSE sweep over K and SNR, printed as CSV.
//!
//! `cargo run --release --example monte_carlo -- 20` runs 20 trials per cell.

use pilotcs::harness::{run_experiment, ExperimentConfig};

fn main() -> pilotcs::Result<()> {
    let trials = std::env::args()
        .nth(1)
        .map_or(10, |a| a.parse().expect("trials must be an integer"));
    let cfg = ExperimentConfig {
        k_list: vec![60, 100, 140],
        trials,
        ..ExperimentConfig::default()
    };
    eprintln!("config:\n{cfg}");
    let result = run_experiment(&cfg)?;
    print!("{}", result.summary_csv());
    Ok(())
}
