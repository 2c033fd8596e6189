use std::fmt;

use super::MeasurementOperator;
use crate::correlation::welch_bound;
use crate::error::{Error, Result};

/// Logarithm used in the recovery-guarantee margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Natural,
    Two,
    Ten,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Two => x.log2(),
            LogBase::Ten => x.log10(),
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "e" | "ln" | "natural" => Ok(LogBase::Natural),
            "2" | "log2" => Ok(LogBase::Two),
            "10" | "log10" => Ok(LogBase::Ten),
            other => Err(Error::invalid(format!("unknown log base `{other}`"))),
        }
    }
}

/// `sqrt(mu^2 K c0 ln N) + (K / N) ||Phi||^2`.
pub fn guarantee_margin(mu: f64, spectral_norm_sq: f64, k: usize, n: usize, c0: f64) -> f64 {
    guarantee_margin_with_base(mu, spectral_norm_sq, k, n, c0, LogBase::Natural)
}

pub fn guarantee_margin_with_base(
    mu: f64,
    spectral_norm_sq: f64,
    k: usize,
    n: usize,
    c0: f64,
    base: LogBase,
) -> f64 {
    let k = k as f64;
    (mu * mu * k * c0 * base.log(n as f64)).sqrt() + k / n as f64 * spectral_norm_sq
}

/// Coherence and spectral-norm certificate of a measurement operator.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub coherence: f64,
    pub welch: f64,
    pub spectral_norm_sq: f64,
    /// `N / M`
    pub spectral_lower: f64,
    /// `(N / M) (1 + theta_a (M - 1))`
    pub spectral_upper: f64,
    pub theta_a: f64,
    pub theta_c: Option<f64>,
    pub guarantee_margin: f64,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub c0: f64,
}

/// Column names, in field order, for CSV output.
pub const REPORT_FIELDS: [&str; 8] = [
    "coherence",
    "welch",
    "spectral_norm_sq",
    "spectral_lower",
    "spectral_upper",
    "theta_a",
    "theta_c",
    "guarantee_margin",
];

impl AnalysisReport {
    pub(super) fn new(
        op: &MeasurementOperator,
        k: usize,
        c0: f64,
        log_base: LogBase,
    ) -> Result<Self> {
        if c0.is_nan() || c0 < 1.0 {
            return Err(Error::invalid(format!("c0 must be >= 1, got {c0}")));
        }
        let (m, n) = (op.rows(), op.cols());
        if n < 2 {
            return Err(Error::invalid("operator needs at least two columns"));
        }
        let profile = op.profile();
        let mu = op.coherence();
        let snsq = op.spectral_norm_sq();
        let ratio = n as f64 / m as f64;
        Ok(Self {
            coherence: mu,
            welch: welch_bound(m, n)?,
            spectral_norm_sq: snsq,
            spectral_lower: ratio,
            spectral_upper: ratio * (1.0 + profile.theta_a * (m as f64 - 1.0)),
            theta_a: profile.theta_a,
            theta_c: profile.theta_c,
            guarantee_margin: guarantee_margin_with_base(mu, snsq, k, n, c0, log_base),
            m,
            n,
            k,
            c0,
        })
    }

    /// Descriptions of every violated bound, empty when both sandwiches hold.
    pub fn violations(&self, tol: f64) -> Vec<String> {
        let upper = self.theta_a.max(self.theta_c.unwrap_or(0.0));
        let mut out = Vec::new();
        if self.coherence < self.welch - tol {
            out.push(format!(
                "coherence {} below Welch bound {}",
                self.coherence, self.welch
            ));
        }
        if self.coherence > upper + tol {
            out.push(format!(
                "coherence {} above max(theta_a, theta_c) = {upper}",
                self.coherence
            ));
        }
        if self.spectral_norm_sq < self.spectral_lower - tol {
            out.push(format!(
                "spectral norm^2 {} below N/M = {}",
                self.spectral_norm_sq, self.spectral_lower
            ));
        }
        if self.spectral_norm_sq > self.spectral_upper + tol {
            out.push(format!(
                "spectral norm^2 {} above (N/M)(1 + theta_a (M-1)) = {}",
                self.spectral_norm_sq, self.spectral_upper
            ));
        }
        out
    }

    pub fn csv_header() -> String {
        REPORT_FIELDS.join(",")
    }

    pub fn csv_row(&self) -> String {
        let theta_c = self.theta_c.map(|v| format!("{v:e}")).unwrap_or_default();
        format!(
            "{:e},{:e},{:e},{:e},{:e},{:e},{},{:e}",
            self.coherence,
            self.welch,
            self.spectral_norm_sq,
            self.spectral_lower,
            self.spectral_upper,
            self.theta_a,
            theta_c,
            self.guarantee_margin
        )
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let theta_c = self
            .theta_c
            .map(|v| format!("{v:.12}"))
            .unwrap_or_else(|| "n/a".to_string());
        writeln!(f, "operator          M={} N={}", self.m, self.n)?;
        writeln!(f, "coherence         {:.12}", self.coherence)?;
        writeln!(f, "welch             {:.12}", self.welch)?;
        writeln!(f, "spectral_norm_sq  {:.12}", self.spectral_norm_sq)?;
        writeln!(f, "spectral_lower    {:.12}", self.spectral_lower)?;
        writeln!(f, "spectral_upper    {:.12}", self.spectral_upper)?;
        writeln!(f, "theta_a           {:.12}", self.theta_a)?;
        writeln!(f, "theta_c           {theta_c}")?;
        write!(
            f,
            "guarantee_margin  {:.12}  (K={}, c0={})",
            self.guarantee_margin, self.k, self.c0
        )
    }
}
