//! Sparse recovery by iterative shrinkage.
//!
//! The LASSO `min 0.5 ||Phi h - y||^2 + lambda ||h||_1` is solved by proximal
//! gradient steps with complex soft-thresholding, warm-started along a
//! geometric continuation path from `||Phi^H y||_inf` down to the target
//! `lambda`. After the path the estimate can be debiased by least squares on
//! its detected support. Basis pursuit runs the same path to a tiny `lambda`
//! and checks a least-squares fit on the current support after every stage.

mod debias;

pub use debias::debias_on_support;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::MeasurementOperator;

/// Final `lambda` of basis pursuit, relative to `||Phi^H y||_inf`.
pub const BP_LAMBDA_RATIO: f64 = 1e-6;
/// Relative residual a basis pursuit estimate must reach to count as converged.
pub const BP_RESIDUAL_TOL: f64 = 1e-6;
// a support fit this tight ends the basis pursuit path early
const BP_EARLY_EXIT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StepRule {
    /// `1 / ||Phi||_2^2`, exact for these operators.
    #[default]
    FixedFromNormBound,
    /// Halve the step until the quadratic upper model holds.
    Backtracking,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub lambda: f64,
    /// Number of stages on the continuation path, the last one at `lambda`.
    pub continuation_steps: usize,
    /// Iteration cap per stage.
    pub max_iters: usize,
    /// A stage stops when `||h_next - h|| <= rel_tol * ||h_next||`.
    pub rel_tol: f64,
    pub step_rule: StepRule,
    pub debias: bool,
    /// Coefficients at least this fraction of the largest magnitude form the support estimate.
    pub support_threshold: f64,
    /// Keep a per-iteration log in the result.
    pub record_log: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            lambda: 0.0,
            continuation_steps: 8,
            max_iters: 2000,
            rel_tol: 1e-7,
            step_rule: StepRule::FixedFromNormBound,
            debias: true,
            support_threshold: 1e-3,
            record_log: false,
        }
    }
}

impl SolverConfig {
    pub fn with_lambda(lambda: f64) -> Self {
        Self {
            lambda,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(Error::invalid(format!(
                "lambda must be finite and >= 0, got {}",
                self.lambda
            )));
        }
        if self.rel_tol.is_nan() || self.rel_tol <= 0.0 {
            return Err(Error::invalid("rel_tol must be positive"));
        }
        if self.max_iters == 0 || self.continuation_steps == 0 {
            return Err(Error::invalid(
                "max_iters and continuation_steps must be >= 1",
            ));
        }
        if !(self.support_threshold > 0.0 && self.support_threshold <= 1.0) {
            return Err(Error::invalid("support_threshold must lie in (0, 1]"));
        }
        Ok(())
    }
}

/// Noise-calibrated weight `factor * sigma * sqrt(2 ln N)`.
pub fn noise_lambda(sigma_sq: f64, n: usize, factor: f64) -> f64 {
    factor * sigma_sq.sqrt() * (2.0 * (n as f64).ln()).sqrt()
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SolveLogEntry {
    pub stage: usize,
    pub iteration: usize,
    pub lambda: f64,
    pub objective: f64,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct RecoveryResult {
    pub estimate: Vec<Complex64>,
    pub iterations: usize,
    pub final_objective: f64,
    /// 0-based, ascending.
    pub support_estimate: Vec<usize>,
    pub converged: bool,
    pub log: Vec<SolveLogEntry>,
}

/// Complex soft-thresholding `z * max(|z| - t, 0) / |z|`.
pub fn soft_threshold(z: Complex64, t: f64) -> Complex64 {
    let mag = z.norm();
    if mag <= t {
        Complex64::new(0.0, 0.0)
    } else {
        z * ((mag - t) / mag)
    }
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn l1(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm()).sum()
}

fn residual(op: &MeasurementOperator, h: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
    let mut r = op.forward(h).expect("length checked");
    r.iter_mut().zip(y).for_each(|(a, b)| *a -= b);
    r
}

/// LASSO objective `0.5 ||Phi h - y||^2 + lambda ||h||_1`.
pub fn lasso_objective(
    op: &MeasurementOperator,
    h: &[Complex64],
    y: &[Complex64],
    lambda: f64,
) -> Result<f64> {
    check_inputs(op, y)?;
    if h.len() != op.cols() {
        return Err(Error::LengthMismatch {
            expected: op.cols(),
            actual: h.len(),
        });
    }
    let r = residual(op, h, y);
    Ok(0.5 * norm2(&r).powi(2) + lambda * l1(h))
}

fn check_inputs(op: &MeasurementOperator, y: &[Complex64]) -> Result<()> {
    if y.len() != op.rows() {
        return Err(Error::LengthMismatch {
            expected: op.rows(),
            actual: y.len(),
        });
    }
    if y.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::invalid("measurements must be finite"));
    }
    Ok(())
}

/// Support of `h`: entries with magnitude at least `threshold * max|h|`.
pub fn detect_support(h: &[Complex64], threshold: f64) -> Vec<usize> {
    let peak = h.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Vec::new();
    }
    let cut = threshold * peak;
    (0..h.len()).filter(|&i| h[i].norm() >= cut).collect()
}

struct Shrinkage<'a> {
    op: &'a MeasurementOperator,
    y: &'a [Complex64],
    cfg: &'a SolverConfig,
    step: f64,
    h: Vec<Complex64>,
    iterations: usize,
    log: Vec<SolveLogEntry>,
}

impl<'a> Shrinkage<'a> {
    fn new(op: &'a MeasurementOperator, y: &'a [Complex64], cfg: &'a SolverConfig) -> Self {
        Self {
            op,
            y,
            cfg,
            step: 1.0 / op.spectral_norm_sq(),
            h: vec![Complex64::new(0.0, 0.0); op.cols()],
            iterations: 0,
            log: Vec::new(),
        }
    }

    fn prox_step(&self, grad: &[Complex64], step: f64, lambda: f64) -> Vec<Complex64> {
        self.h
            .iter()
            .zip(grad)
            .map(|(h, g)| soft_threshold(h - g * step, step * lambda))
            .collect()
    }

    /// Runs one continuation stage; returns whether it met `rel_tol`.
    fn run_stage(&mut self, stage: usize, lambda: f64) -> bool {
        let mut r = residual(self.op, &self.h, self.y);
        for _ in 0..self.cfg.max_iters {
            let fit = 0.5 * norm2(&r).powi(2);
            if self.cfg.record_log {
                self.log.push(SolveLogEntry {
                    stage,
                    iteration: self.iterations,
                    lambda,
                    objective: fit + lambda * l1(&self.h),
                    residual: norm2(&r),
                });
            }
            let grad = self.op.adjoint(&r).expect("length checked");
            let (next, next_r) = match self.cfg.step_rule {
                StepRule::FixedFromNormBound => {
                    let next = self.prox_step(&grad, self.step, lambda);
                    let next_r = residual(self.op, &next, self.y);
                    (next, next_r)
                }
                StepRule::Backtracking => self.backtrack(&grad, fit, lambda),
            };
            self.iterations += 1;
            let delta: f64 = next
                .iter()
                .zip(&self.h)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let scale = norm2(&next);
            self.h = next;
            r = next_r;
            if delta <= self.cfg.rel_tol * scale || scale == 0.0 && delta == 0.0 {
                return true;
            }
        }
        false
    }

    fn backtrack(
        &mut self,
        grad: &[Complex64],
        fit: f64,
        lambda: f64,
    ) -> (Vec<Complex64>, Vec<Complex64>) {
        // start from twice the last accepted step so it can grow back
        let mut step = (self.step * 2.0).min(1e6);
        loop {
            let next = self.prox_step(grad, step, lambda);
            let next_r = residual(self.op, &next, self.y);
            let (mut lin, mut quad) = (0.0, 0.0);
            for ((a, b), g) in next.iter().zip(&self.h).zip(grad) {
                let d = a - b;
                lin += (g.conj() * d).re;
                quad += d.norm_sqr();
            }
            let model = fit + lin + quad / (2.0 * step);
            if 0.5 * norm2(&next_r).powi(2) <= model * (1.0 + 1e-12) || step < 1e-12 {
                self.step = step;
                return (next, next_r);
            }
            step *= 0.5;
        }
    }
}

fn lambda_path(lambda_max: f64, lambda: f64, steps: usize) -> Vec<f64> {
    let ratio = lambda / lambda_max;
    (1..=steps)
        .map(|j| {
            if j == steps {
                lambda
            } else {
                lambda_max * ratio.powf(j as f64 / steps as f64)
            }
        })
        .collect()
}

/// Thresholds, optionally debiases and packages the solver state.
fn finish(solver: Shrinkage<'_>, lambda: f64, converged: bool) -> Result<RecoveryResult> {
    let Shrinkage {
        op,
        y,
        cfg,
        h: mut estimate,
        iterations,
        log,
        ..
    } = solver;
    let support_estimate = detect_support(&estimate, cfg.support_threshold);
    if cfg.debias && !support_estimate.is_empty() && support_estimate.len() <= op.rows() {
        estimate = debias_on_support(op, &support_estimate, y)?;
    }
    let final_objective = lasso_objective(op, &estimate, y, lambda)?;
    Ok(RecoveryResult {
        estimate,
        iterations,
        final_objective,
        support_estimate,
        converged,
        log,
    })
}

/// Approximate LASSO minimizer with continuation and optional debiasing.
pub fn lasso(
    op: &MeasurementOperator,
    y: &[Complex64],
    cfg: &SolverConfig,
) -> Result<RecoveryResult> {
    cfg.validate()?;
    check_inputs(op, y)?;
    let lambda_max = op.adjoint(y)?.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if cfg.lambda >= lambda_max {
        let zero = vec![Complex64::new(0.0, 0.0); op.cols()];
        let obj = lasso_objective(op, &zero, y, cfg.lambda)?;
        return Ok(RecoveryResult {
            estimate: zero,
            iterations: 0,
            final_objective: obj,
            support_estimate: Vec::new(),
            converged: true,
            log: Vec::new(),
        });
    }
    // lambda = 0 is least squares; stop the path just above it
    let target = cfg.lambda.max(1e-12 * lambda_max);

    let mut solver = Shrinkage::new(op, y, cfg);
    let mut converged = false;
    for (stage, lam) in lambda_path(lambda_max, target, cfg.continuation_steps)
        .into_iter()
        .enumerate()
    {
        converged = solver.run_stage(stage, lam);
    }
    finish(solver, cfg.lambda, converged)
}

/// Approximate `argmin ||h||_1` subject to `Phi h = y`.
///
/// `cfg.lambda` and `cfg.debias` are ignored: the path ends at
/// [`BP_LAMBDA_RATIO`] times `||Phi^H y||_inf` and the result is always
/// debiased. After each stage the current support is refit by least squares;
/// a fit with relative residual below `1e-10` ends the path. `converged`
/// reports whether the final relative residual is at most [`BP_RESIDUAL_TOL`].
pub fn basis_pursuit(
    op: &MeasurementOperator,
    y: &[Complex64],
    cfg: &SolverConfig,
) -> Result<RecoveryResult> {
    cfg.validate()?;
    check_inputs(op, y)?;
    let y_norm = norm2(y);
    if y_norm == 0.0 {
        return Ok(RecoveryResult {
            estimate: vec![Complex64::new(0.0, 0.0); op.cols()],
            iterations: 0,
            final_objective: 0.0,
            support_estimate: Vec::new(),
            converged: true,
            log: Vec::new(),
        });
    }
    let lambda_max = op.adjoint(y)?.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let target = BP_LAMBDA_RATIO * lambda_max;
    let cfg = SolverConfig {
        lambda: target,
        debias: true,
        ..cfg.clone()
    };

    let mut solver = Shrinkage::new(op, y, &cfg);
    for (stage, lam) in lambda_path(lambda_max, target, cfg.continuation_steps)
        .into_iter()
        .enumerate()
    {
        solver.run_stage(stage, lam);
        let support = detect_support(&solver.h, cfg.support_threshold);
        if support.is_empty() || support.len() > op.rows() {
            continue;
        }
        let fit = debias_on_support(op, &support, y)?;
        if norm2(&residual(op, &fit, y)) <= BP_EARLY_EXIT_TOL * y_norm {
            solver.h = fit;
            break;
        }
    }
    let mut result = finish(solver, target, false)?;
    result.converged = norm2(&residual(op, &result.estimate, y)) <= BP_RESIDUAL_TOL * y_norm;
    Ok(result)
}
