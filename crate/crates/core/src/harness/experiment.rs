use std::fmt::Write as _;

use rayon::prelude::*;

use super::config::ExperimentConfig;
use super::metrics::compute_metrics;
use crate::channel::{add_awgn, generate_sparse_channel};
use crate::error::{Error, Result};
use crate::operator::{AnalysisReport, MeasurementOperator};
use crate::pilot::{assign_pilots, assign_pilots_with_bases, PilotPlan};
use crate::recovery::{basis_pursuit, lasso, noise_lambda, SolverConfig};
use crate::seqgen::{
    fzc_family, gold_family_default, kasami_family, m_sequence_family, FamilyKind, LfsrSpec,
    SequenceFamily,
};

/// Relative error below which a trial counts as exact recovery.
pub const EXACT_RECOVERY_TOL: f64 = 1e-4;

pub const SUMMARY_HEADER: &str = "K,snr_db,trials,mean_mse,median_mse,exact_rate,mean_iters";
pub const DETAIL_HEADER: &str = "K,snr_db,trial,mse,rel_err,precision,recall,iters,converged";

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub k: usize,
    pub snr_db: f64,
    pub trial: usize,
    pub mse: f64,
    pub rel_err: f64,
    pub support_precision: f64,
    pub support_recall: f64,
    pub solver_iterations: usize,
    pub converged: bool,
}

/// Summary of one `(K, snr)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub k: usize,
    pub snr_db: f64,
    pub trials: usize,
    pub mean_mse: f64,
    pub median_mse: f64,
    pub exact_rate: f64,
    pub mean_iters: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateResult {
    pub cells: Vec<CellSummary>,
    /// Every trial, ordered by `(K, snr, trial)` in config order.
    pub trials: Vec<TrialResult>,
}

impl AggregateResult {
    pub fn cell(&self, k: usize, snr_db: f64) -> Option<&CellSummary> {
        self.cells
            .iter()
            .find(|c| c.k == k && c.snr_db.to_bits() == snr_db.to_bits())
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from(SUMMARY_HEADER);
        out.push('\n');
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{},{:e},{:e},{},{}",
                c.k, c.snr_db, c.trials, c.mean_mse, c.median_mse, c.exact_rate, c.mean_iters
            );
        }
        out
    }

    pub fn detail_csv(&self) -> String {
        let mut out = String::from(DETAIL_HEADER);
        out.push('\n');
        for t in &self.trials {
            let _ = writeln!(
                out,
                "{},{},{},{:e},{:e},{},{},{},{}",
                t.k,
                t.snr_db,
                t.trial,
                t.mse,
                t.rel_err,
                t.support_precision,
                t.support_recall,
                t.solver_iterations,
                t.converged
            );
        }
        out
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn mix(a: u64, b: u64) -> u64 {
    splitmix64(a ^ splitmix64(b))
}

/// Seed of the channel drawn for trial `trial` at sparsity `k`. It does not
/// depend on the SNR, so every SNR of a sweep sees the same channels.
pub fn channel_seed(base_seed: u64, k: usize, trial: usize) -> u64 {
    mix(mix(mix(base_seed, 0xC4A2), k as u64), trial as u64)
}

/// Seed of the noise added in trial `trial` of the `(k, snr_db)` cell.
pub fn noise_seed(base_seed: u64, k: usize, snr_db: f64, trial: usize) -> u64 {
    mix(
        mix(mix(mix(base_seed, 0x9015), k as u64), snr_db.to_bits()),
        trial as u64,
    )
}

/// Builds the sequence family a config asks for.
pub fn build_family(cfg: &ExperimentConfig) -> Result<SequenceFamily> {
    match cfg.family {
        FamilyKind::Fzc => fzc_family(cfg.m as u64),
        FamilyKind::Gold => gold_family_default(
            cfg.degree
                .ok_or_else(|| Error::config("gold needs degree"))?,
        ),
        FamilyKind::Kasami => kasami_family(
            cfg.degree
                .ok_or_else(|| Error::config("kasami needs degree"))?,
        ),
        FamilyKind::MSequence => m_sequence_family(&LfsrSpec::primitive(
            cfg.degree
                .ok_or_else(|| Error::config("msequence needs degree"))?,
        )?),
    }
}

/// Family, pilot plan and operator for a config.
#[derive(Debug, Clone)]
pub struct Setup {
    pub family: SequenceFamily,
    pub plan: PilotPlan,
    pub operator: MeasurementOperator,
}

impl Setup {
    pub fn build(cfg: &ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        let family = build_family(cfg)?;
        let plan = match &cfg.base_indices {
            Some(idx) => assign_pilots_with_bases(&family, cfg.t, cfg.m, cfg.l, idx)?,
            None => assign_pilots(&family, cfg.t, cfg.m, cfg.l)?,
        };
        let operator = MeasurementOperator::from_plan(&plan)?;
        Ok(Self {
            family,
            plan,
            operator,
        })
    }
}

/// Operator certificate for a config.
pub fn analyze(cfg: &ExperimentConfig) -> Result<AnalysisReport> {
    let setup = Setup::build(cfg)?;
    let k = cfg
        .analyze_k
        .or_else(|| cfg.k_list.first().copied())
        .unwrap_or(0);
    setup.operator.analyze(k, cfg.c0, cfg.log_base)
}

/// Runs one seeded trial: draw, measure, add noise, recover, score.
pub fn run_trial(
    op: &MeasurementOperator,
    cfg: &ExperimentConfig,
    k: usize,
    snr_db: f64,
    trial: usize,
) -> Result<TrialResult> {
    let h = generate_sparse_channel(
        op.cols(),
        k,
        cfg.magnitude,
        channel_seed(cfg.base_seed, k, trial),
    )?;
    let clean = op.forward(&h.to_dense())?;
    let result = if snr_db == f64::INFINITY {
        basis_pursuit(op, &clean, &cfg.solver)?
    } else {
        let (y, noise) = add_awgn(&clean, snr_db, noise_seed(cfg.base_seed, k, snr_db, trial))?;
        let solver = SolverConfig {
            lambda: noise_lambda(noise.realized_sigma_sq, op.cols(), cfg.lambda_factor),
            ..cfg.solver.clone()
        };
        lasso(op, &y, &solver)?
    };
    let m = compute_metrics(&h, &result.estimate, &result.support_estimate)?;
    Ok(TrialResult {
        k,
        snr_db,
        trial,
        mse: m.mse,
        rel_err: m.rel_err,
        support_precision: m.precision,
        support_recall: m.recall,
        solver_iterations: result.iterations,
        converged: result.converged,
    })
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

fn summarize(k: usize, snr_db: f64, trials: &[TrialResult]) -> CellSummary {
    let n = trials.len() as f64;
    let mut mses: Vec<f64> = trials.iter().map(|t| t.mse).collect();
    CellSummary {
        k,
        snr_db,
        trials: trials.len(),
        mean_mse: mses.iter().sum::<f64>() / n,
        median_mse: median(&mut mses),
        exact_rate: trials
            .iter()
            .filter(|t| t.rel_err < EXACT_RECOVERY_TOL)
            .count() as f64
            / n,
        mean_iters: trials
            .iter()
            .map(|t| t.solver_iterations as f64)
            .sum::<f64>()
            / n,
    }
}

/// Runs every `(K, snr, trial)` of the sweep and aggregates per cell.
///
/// Trials are independent and run on `cfg.workers` threads; results are
/// collected in config order, so the output does not depend on the worker
/// count. CSV files are written when `cfg.output` / `cfg.detail_output` are set.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<AggregateResult> {
    let setup = Setup::build(cfg)?;
    let op = &setup.operator;

    let tasks: Vec<(usize, f64, usize)> = cfg
        .k_list
        .iter()
        .flat_map(|&k| {
            cfg.snr_db
                .iter()
                .flat_map(move |&snr| (0..cfg.trials).map(move |trial| (k, snr, trial)))
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::config(format!("cannot start worker pool: {e}")))?;
    let trials = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(k, snr, trial)| run_trial(op, cfg, k, snr, trial))
            .collect::<Result<Vec<_>>>()
    })?;

    let cells = trials
        .chunks(cfg.trials)
        .map(|chunk| summarize(chunk[0].k, chunk[0].snr_db, chunk))
        .collect();
    let result = AggregateResult { cells, trials };

    if let Some(path) = &cfg.output {
        std::fs::write(path, result.summary_csv())?;
    }
    if let Some(path) = &cfg.detail_output {
        std::fs::write(path, result.detail_csv())?;
    }
    Ok(result)
}
