//! The measurement model and its concatenated-circulant operator.
//!
//! Circulants are described by their first row: `A^b(r, c) = b((c - r) mod M)`.
//! Products with `A^b` are circular convolutions with the first column
//! `g(r) = b(-r mod M)`, so each block is applied through the cached DFT of `g`.

mod analysis;
pub mod dense;

pub use analysis::{guarantee_margin, guarantee_margin_with_base, AnalysisReport, LogBase};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::correlation::{self, CorrelationProfile};
use crate::error::{Error, Result};
use crate::pilot::PilotPlan;
use crate::seqgen::PeriodicSequence;
use crate::spectral::Dft;

/// Default cap on `M * N` for dense materialization.
pub const DEFAULT_DENSE_LIMIT: usize = 1 << 22;

/// Linear convolution of a pilot with a channel of length `L <= M`,
/// giving `M + L - 1` samples.
pub fn linear_convolve(pilot: &PeriodicSequence, h: &[Complex64]) -> Result<Vec<Complex64>> {
    let m = pilot.period();
    let l = h.len();
    if l == 0 || l > m {
        return Err(Error::invalid(format!(
            "channel length {l} must lie in [1, M={m}]"
        )));
    }
    let p = pilot.values();
    let mut out = vec![Complex64::new(0.0, 0.0); m + l - 1];
    for (c, &tap) in h.iter().enumerate() {
        for (k, &v) in p.iter().enumerate() {
            out[k + c] += v * tap;
        }
    }
    Ok(out)
}

/// Adds the first `L - 1` samples of a linear convolution onto the last
/// `L - 1` and keeps the final `M`, turning it into a circular convolution.
pub fn fold_to_circular(y0: &[Complex64], m: usize, l: usize) -> Result<Vec<Complex64>> {
    if l == 0 || l > m {
        return Err(Error::invalid(format!("L={l} must lie in [1, M={m}]")));
    }
    if y0.len() != m + l - 1 {
        return Err(Error::LengthMismatch {
            expected: m + l - 1,
            actual: y0.len(),
        });
    }
    let mut z = y0.to_vec();
    for j in 0..l - 1 {
        z[m + j] += y0[j];
    }
    Ok(z.split_off(l - 1))
}

/// Row-wise concatenation `[A^{b_1} ... A^{b_q}]` of `q` circulants, kept
/// implicit through the spectra of its base sequences.
#[derive(Debug, Clone)]
pub struct MeasurementOperator {
    bases: Vec<PeriodicSequence>,
    m: usize,
    dft: Dft,
    // DFT of each block's first column
    spectra: Vec<Vec<Complex64>>,
    profile: CorrelationProfile,
    spectral_norm_sq: f64,
}

impl MeasurementOperator {
    pub fn new(bases: Vec<PeriodicSequence>) -> Result<Self> {
        let profile = correlation::profile_of(&bases)?;
        let m = profile.period;
        let dft = Dft::new(m);
        let spectra: Vec<Vec<Complex64>> = bases
            .iter()
            .map(|b| {
                let first_col: Vec<Complex64> = (0..m).map(|r| b.values()[(m - r) % m]).collect();
                dft.spectrum(&first_col)
            })
            .collect();
        // Phi Phi^H = sum_u A_u A_u^H is diagonal in the Fourier basis
        let spectral_norm_sq = (0..m)
            .map(|k| spectra.iter().map(|s| s[k].norm_sqr()).sum::<f64>())
            .fold(0.0, f64::max);
        Ok(Self {
            bases,
            m,
            dft,
            spectra,
            profile,
            spectral_norm_sq,
        })
    }

    pub fn from_plan(plan: &PilotPlan) -> Result<Self> {
        Self::new(plan.bases().sequences().to_vec())
    }

    /// Number of rows `M`.
    pub fn rows(&self) -> usize {
        self.m
    }

    /// Number of columns `N = qM`.
    pub fn cols(&self) -> usize {
        self.m * self.bases.len()
    }

    pub fn blocks(&self) -> usize {
        self.bases.len()
    }

    pub fn bases(&self) -> &[PeriodicSequence] {
        &self.bases
    }

    /// Correlation profile of the base sequences.
    pub fn profile(&self) -> &CorrelationProfile {
        &self.profile
    }

    /// `Phi h`, in `O(q M log M)`.
    pub fn forward(&self, h: &[Complex64]) -> Result<Vec<Complex64>> {
        if h.len() != self.cols() {
            return Err(Error::LengthMismatch {
                expected: self.cols(),
                actual: h.len(),
            });
        }
        let mut acc = vec![Complex64::new(0.0, 0.0); self.m];
        let mut buf = vec![Complex64::new(0.0, 0.0); self.m];
        for (block, spectrum) in h.chunks_exact(self.m).zip(&self.spectra) {
            buf.copy_from_slice(block);
            self.dft.forward(&mut buf);
            for ((a, x), s) in acc.iter_mut().zip(&buf).zip(spectrum) {
                *a += x * s;
            }
        }
        self.dft.inverse(&mut acc);
        Ok(acc)
    }

    /// `Phi^H y`.
    pub fn adjoint(&self, y: &[Complex64]) -> Result<Vec<Complex64>> {
        if y.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                actual: y.len(),
            });
        }
        let ys = self.dft.spectrum(y);
        let mut out = Vec::with_capacity(self.cols());
        let mut buf = vec![Complex64::new(0.0, 0.0); self.m];
        for spectrum in &self.spectra {
            for ((b, s), x) in buf.iter_mut().zip(spectrum).zip(&ys) {
                *b = s.conj() * x;
            }
            self.dft.inverse(&mut buf);
            out.extend_from_slice(&buf);
        }
        Ok(out)
    }

    /// Column `j` of the matrix.
    pub fn column(&self, j: usize) -> Result<Vec<Complex64>> {
        if j >= self.cols() {
            return Err(Error::invalid(format!(
                "column {j} out of range {}",
                self.cols()
            )));
        }
        let (u, c) = (j / self.m, j % self.m);
        let b = self.bases[u].values();
        Ok((0..self.m).map(|r| b[(c + self.m - r) % self.m]).collect())
    }

    /// Exact mutual coherence. Every column inner product is a periodic
    /// correlation of the bases, so this is `max(theta_a, theta_c)` of the
    /// base set and never touches the Gram matrix.
    pub fn coherence(&self) -> f64 {
        self.profile.max_correlation()
    }

    /// Exact `||Phi||_2^2`, the largest eigenvalue of `Phi Phi^H`.
    pub fn spectral_norm_sq(&self) -> f64 {
        self.spectral_norm_sq
    }

    /// Dense `M x N` matrix, refused above [`DEFAULT_DENSE_LIMIT`] entries.
    pub fn materialize(&self) -> Result<DMatrix<Complex64>> {
        self.materialize_with_limit(DEFAULT_DENSE_LIMIT)
    }

    pub fn materialize_with_limit(&self, limit: usize) -> Result<DMatrix<Complex64>> {
        let (rows, cols) = (self.rows(), self.cols());
        let entries = rows * cols;
        if entries > limit {
            return Err(Error::TooLarge {
                rows,
                cols,
                entries,
                limit,
            });
        }
        let m = self.m;
        Ok(DMatrix::from_fn(rows, cols, |r, j| {
            let (u, c) = (j / m, j % m);
            self.bases[u].values()[(c + m - r) % m]
        }))
    }

    /// Coherence, spectral norm and their bounds, with the recovery
    /// guarantee margin evaluated at sparsity `k`.
    pub fn analyze(&self, k: usize, c0: f64, log_base: LogBase) -> Result<AnalysisReport> {
        AnalysisReport::new(self, k, c0, log_base)
    }
}
