//! One noiseless and one noisy recovery on the default configuration.

use pilotcs::channel::{add_awgn, generate_sparse_channel, MagnitudeModel};
use pilotcs::harness::compute_metrics;
use pilotcs::operator::MeasurementOperator;
use pilotcs::pilot::assign_pilots;
use pilotcs::recovery::{basis_pursuit, lasso, noise_lambda, SolverConfig};
use pilotcs::seqgen::fzc_family;

fn main() -> pilotcs::Result<()> {
    let plan = assign_pilots(&fzc_family(255)?, 10, 255, 51)?;
    let op = MeasurementOperator::from_plan(&plan)?;
    let h = generate_sparse_channel(op.cols(), 60, MagnitudeModel::Rayleigh, 2024)?;
    let clean = op.forward(&h.to_dense())?;

    let bp = basis_pursuit(&op, &clean, &SolverConfig::default())?;
    let m = compute_metrics(&h, &bp.estimate, &bp.support_estimate)?;
    println!(
        "basis pursuit: rel err {:.2e}, {} iterations, residual ok {}",
        m.rel_err, bp.iterations, bp.converged
    );

    for snr in [10.0, 20.0, 30.0] {
        let (y, noise) = add_awgn(&clean, snr, 7)?;
        let cfg = SolverConfig::with_lambda(noise_lambda(noise.realized_sigma_sq, op.cols(), 1.0));
        let res = lasso(&op, &y, &cfg)?;
        let m = compute_metrics(&h, &res.estimate, &res.support_estimate)?;
        println!(
            "LASSO at {snr:>4} dB: mse {:.3e}, precision {:.2}, recall {:.2}",
            m.mse, m.precision, m.recall
        );
    }
    Ok(())
}
