use std::fmt;
use std::path::{Path, PathBuf};

use crate::channel::MagnitudeModel;
use crate::error::{Error, Result};
use crate::operator::LogBase;
use crate::recovery::{SolverConfig, StepRule};
use crate::seqgen::FamilyKind;

/// Monte Carlo sweep configuration.
///
/// Read from flat `key = value` text, one entry per line, lists
/// comma-separated, `#` starting a comment. `snr_db = inf` (or
/// `noiseless = true`) selects noiseless basis pursuit.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub m: usize,
    pub l: usize,
    pub t: usize,
    pub family: FamilyKind,
    /// LFSR degree for Gold, Kasami and m-sequence families.
    pub degree: Option<u32>,
    /// 0-based family members used as bases; default is the first `q`.
    pub base_indices: Option<Vec<usize>>,
    pub snr_db: Vec<f64>,
    pub k_list: Vec<usize>,
    pub trials: usize,
    pub base_seed: u64,
    pub magnitude: MagnitudeModel,
    /// Multiplies the noise-calibrated LASSO weight `sigma sqrt(2 ln N)`.
    pub lambda_factor: f64,
    pub solver: SolverConfig,
    /// Worker threads; 0 picks the rayon default.
    pub workers: usize,
    pub output: Option<PathBuf>,
    pub detail_output: Option<PathBuf>,
    pub c0: f64,
    pub log_base: LogBase,
    /// Sparsity for the analysis margin; defaults to the first `k_list` entry.
    pub analyze_k: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            m: 255,
            l: 51,
            t: 10,
            family: FamilyKind::Fzc,
            degree: None,
            base_indices: None,
            snr_db: vec![10.0, 20.0, 30.0],
            k_list: vec![60, 80, 100, 120, 140],
            trials: 50,
            base_seed: 1,
            magnitude: MagnitudeModel::Unit,
            lambda_factor: 1.0,
            solver: SolverConfig::default(),
            workers: 0,
            output: None,
            detail_output: None,
            c0: 1.0,
            log_base: LogBase::Natural,
            analyze_k: None,
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value.trim().parse().map_err(|_| Error::Parse {
        line,
        message: format!("bad value `{value}` for `{key}`"),
    })
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<Vec<T>> {
    value
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_value(key, s, line))
        .collect()
}

fn parse_bool(key: &str, value: &str, line: usize) -> Result<bool> {
    match value.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::Parse {
            line,
            message: format!("bad boolean `{value}` for `{key}`"),
        }),
    }
}

impl ExperimentConfig {
    pub fn n(&self) -> usize {
        self.t * self.l
    }

    pub fn q(&self) -> usize {
        self.n() / self.m.max(1)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Parses config text on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
                line,
                message: format!("expected `key = value`, found `{content}`"),
            })?;
            cfg.set(key.trim(), value.trim(), line)?;
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        match key {
            "M" => self.m = parse_value(key, value, line)?,
            "L" => self.l = parse_value(key, value, line)?,
            "t" => self.t = parse_value(key, value, line)?,
            "family" => self.family = value.parse()?,
            "degree" => self.degree = Some(parse_value(key, value, line)?),
            "base_indices" => self.base_indices = Some(parse_list(key, value, line)?),
            "snr_db" => self.snr_db = parse_list(key, value, line)?,
            "noiseless" => {
                if parse_bool(key, value, line)? {
                    self.snr_db = vec![f64::INFINITY];
                }
            }
            "K" => self.k_list = parse_list(key, value, line)?,
            "trials" => self.trials = parse_value(key, value, line)?,
            "base_seed" => self.base_seed = parse_value(key, value, line)?,
            "magnitude" => self.magnitude = value.parse()?,
            "lambda_factor" => self.lambda_factor = parse_value(key, value, line)?,
            "workers" => self.workers = parse_value(key, value, line)?,
            "output" => self.output = Some(PathBuf::from(value)),
            "detail_output" => self.detail_output = Some(PathBuf::from(value)),
            "c0" => self.c0 = parse_value(key, value, line)?,
            "log_base" => self.log_base = value.parse()?,
            "analyze_K" => self.analyze_k = Some(parse_value(key, value, line)?),
            "solver.lambda" => self.solver.lambda = parse_value(key, value, line)?,
            "solver.continuation_steps" => {
                self.solver.continuation_steps = parse_value(key, value, line)?
            }
            "solver.max_iters" => self.solver.max_iters = parse_value(key, value, line)?,
            "solver.rel_tol" => self.solver.rel_tol = parse_value(key, value, line)?,
            "solver.step_rule" => {
                self.solver.step_rule = match value {
                    "fixed" | "fixed_from_norm_bound" => StepRule::FixedFromNormBound,
                    "backtracking" => StepRule::Backtracking,
                    _ => {
                        return Err(Error::Parse {
                            line,
                            message: format!("unknown step rule `{value}`"),
                        })
                    }
                }
            }
            "solver.debias" => self.solver.debias = parse_bool(key, value, line)?,
            "solver.support_threshold" => {
                self.solver.support_threshold = parse_value(key, value, line)?
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown key `{key}`"),
                })
            }
        }
        Ok(())
    }

    /// Checks every structural constraint; run before any trial.
    pub fn validate(&self) -> Result<()> {
        let (m, l, t) = (self.m, self.l, self.t);
        if m == 0 || l == 0 || t == 0 {
            return Err(Error::config("M, L and t must be positive"));
        }
        if l > m {
            return Err(Error::config(format!("L={l} exceeds M={m}")));
        }
        if m % l != 0 {
            return Err(Error::config(format!(
                "M mod L == 0 violated: M={m}, L={l}"
            )));
        }
        if (t * l) % m != 0 {
            return Err(Error::config(format!(
                "tL mod M == 0 violated: tL={} is not divisible by M={m}",
                t * l
            )));
        }
        if self.trials == 0 {
            return Err(Error::config("trials must be >= 1"));
        }
        if self.k_list.is_empty() {
            return Err(Error::config("K list is empty"));
        }
        if let Some(&k) = self.k_list.iter().find(|&&k| k == 0 || k > self.n()) {
            return Err(Error::config(format!(
                "K={k} must lie in [1, N={}]",
                self.n()
            )));
        }
        if self.snr_db.is_empty() {
            return Err(Error::config("SNR list is empty"));
        }
        if self
            .snr_db
            .iter()
            .any(|s| s.is_nan() || *s == f64::NEG_INFINITY)
        {
            return Err(Error::config("SNR values must be finite or +inf"));
        }
        if !(self.lambda_factor > 0.0 && self.lambda_factor.is_finite()) {
            return Err(Error::config("lambda_factor must be positive"));
        }
        if self.c0.is_nan() || self.c0 < 1.0 {
            return Err(Error::config("c0 must be >= 1"));
        }
        match (self.family, self.degree) {
            (FamilyKind::Fzc, _) => {
                if m % 2 == 0 || m < 3 {
                    return Err(Error::config(format!(
                        "FZC family needs odd M >= 3, got {m}"
                    )));
                }
            }
            (_, None) => {
                return Err(Error::config(format!(
                    "family `{}` needs `degree`",
                    self.family
                )));
            }
            (_, Some(s)) => {
                if s >= 32 || m != (1usize << s) - 1 {
                    return Err(Error::config(format!(
                        "family `{}` of degree {s} has period 2^{s}-1, not M={m}",
                        self.family
                    )));
                }
            }
        }
        self.solver.validate()
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for ExperimentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "M = {}", self.m)?;
        writeln!(f, "L = {}", self.l)?;
        writeln!(f, "t = {}", self.t)?;
        writeln!(f, "family = {}", self.family)?;
        if let Some(s) = self.degree {
            writeln!(f, "degree = {s}")?;
        }
        if let Some(b) = &self.base_indices {
            writeln!(f, "base_indices = {}", join(b))?;
        }
        writeln!(f, "snr_db = {}", join(&self.snr_db))?;
        writeln!(f, "K = {}", join(&self.k_list))?;
        writeln!(f, "trials = {}", self.trials)?;
        writeln!(f, "base_seed = {}", self.base_seed)?;
        let magnitude = match self.magnitude {
            MagnitudeModel::Unit => "unit",
            MagnitudeModel::Rayleigh => "rayleigh",
        };
        writeln!(f, "magnitude = {magnitude}")?;
        writeln!(f, "lambda_factor = {}", self.lambda_factor)?;
        writeln!(f, "workers = {}", self.workers)?;
        if let Some(p) = &self.output {
            writeln!(f, "output = {}", p.display())?;
        }
        if let Some(p) = &self.detail_output {
            writeln!(f, "detail_output = {}", p.display())?;
        }
        writeln!(f, "c0 = {}", self.c0)?;
        let log_base = match self.log_base {
            LogBase::Natural => "e",
            LogBase::Two => "2",
            LogBase::Ten => "10",
        };
        writeln!(f, "log_base = {log_base}")?;
        if let Some(k) = self.analyze_k {
            writeln!(f, "analyze_K = {k}")?;
        }
        let s = &self.solver;
        writeln!(f, "solver.lambda = {}", s.lambda)?;
        writeln!(f, "solver.continuation_steps = {}", s.continuation_steps)?;
        writeln!(f, "solver.max_iters = {}", s.max_iters)?;
        writeln!(f, "solver.rel_tol = {:e}", s.rel_tol)?;
        let rule = match s.step_rule {
            StepRule::FixedFromNormBound => "fixed",
            StepRule::Backtracking => "backtracking",
        };
        writeln!(f, "solver.step_rule = {rule}")?;
        writeln!(f, "solver.debias = {}", s.debias)?;
        writeln!(f, "solver.support_threshold = {:e}", s.support_threshold)
    }
}
