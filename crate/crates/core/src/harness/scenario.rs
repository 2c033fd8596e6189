//! A single transmitter with a rich channel among sparser ones.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channel::{add_awgn, draw_coefficient, MagnitudeModel, SparseChannel};
use crate::error::{Error, Result};
use crate::harness::metrics::{compute_metrics, Metrics};
use crate::operator::MeasurementOperator;
use crate::recovery::{lasso, noise_lambda, RecoveryResult, SolverConfig};

/// Combined channel of `t` blocks of length `l` where block `focus`
/// (0-based) holds exactly `focus_taps` taps and the remaining
/// `other_taps` are spread uniformly over the other blocks.
pub fn concentrated_channel(
    t: usize,
    l: usize,
    focus: usize,
    focus_taps: usize,
    other_taps: usize,
    model: MagnitudeModel,
    seed: u64,
) -> Result<SparseChannel> {
    if focus >= t {
        return Err(Error::invalid(format!(
            "channel {focus} out of range for t={t}"
        )));
    }
    let n = t * l;
    if focus_taps > l || other_taps > n - l {
        return Err(Error::invalid(
            "more taps requested than positions available",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = focus * l;
    let mut support: Vec<usize> = rand::seq::index::sample(&mut rng, l, focus_taps)
        .into_iter()
        .map(|i| start + i)
        .collect();
    support.extend(
        rand::seq::index::sample(&mut rng, n - l, other_taps)
            .into_iter()
            .map(|i| if i < start { i } else { i + l }),
    );
    support.sort_unstable();
    let coefficients = support
        .iter()
        .map(|_| draw_coefficient(&mut rng, model))
        .collect();
    SparseChannel::new(n, support, coefficients)
}

/// Outcome of one noisy single-instance recovery.
#[derive(Debug, Clone)]
pub struct ScenarioOutcome {
    pub channel: SparseChannel,
    pub recovery: RecoveryResult,
    pub metrics: Metrics,
}

/// Measures `h` through `op`, adds noise at `snr_db` and recovers it with
/// the noise-calibrated LASSO.
pub fn measure_and_recover(
    op: &MeasurementOperator,
    h: SparseChannel,
    snr_db: f64,
    lambda_factor: f64,
    solver: &SolverConfig,
    noise_seed: u64,
) -> Result<ScenarioOutcome> {
    let clean = op.forward(&h.to_dense())?;
    let (y, noise) = add_awgn(&clean, snr_db, noise_seed)?;
    let cfg = SolverConfig {
        lambda: noise_lambda(noise.realized_sigma_sq, op.cols(), lambda_factor),
        ..solver.clone()
    };
    let recovery = lasso(op, &y, &cfg)?;
    let metrics = compute_metrics(&h, &recovery.estimate, &recovery.support_estimate)?;
    Ok(ScenarioOutcome {
        channel: h,
        recovery,
        metrics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn focus_block_gets_exact_count() {
        let h = concentrated_channel(10, 51, 3, 15, 45, MagnitudeModel::Unit, 11).unwrap();
        assert_eq!(h.sparsity(), 60);
        let in_focus = h
            .support()
            .iter()
            .filter(|&&i| (153..204).contains(&i))
            .count();
        assert_eq!(in_focus, 15);
    }

    #[test]
    fn rejects_impossible_requests() {
        assert!(concentrated_channel(10, 51, 10, 1, 1, MagnitudeModel::Unit, 0).is_err());
        assert!(concentrated_channel(2, 5, 0, 6, 0, MagnitudeModel::Unit, 0).is_err());
    }
}
