//! Generic K-sparse combined channels and receiver noise.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MagnitudeModel {
    /// Every nonzero tap has modulus one.
    #[default]
    Unit,
    /// Rayleigh moduli with unit mean power.
    Rayleigh,
}

impl std::str::FromStr for MagnitudeModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "unit" => Ok(MagnitudeModel::Unit),
            "rayleigh" => Ok(MagnitudeModel::Rayleigh),
            other => Err(Error::invalid(format!("unknown magnitude model `{other}`"))),
        }
    }
}

/// Combined channel of length `N` stored by its support (0-based, ascending)
/// and the aligned nonzero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseChannel {
    len: usize,
    support: Vec<usize>,
    coefficients: Vec<Complex64>,
}

impl SparseChannel {
    pub fn new(len: usize, support: Vec<usize>, coefficients: Vec<Complex64>) -> Result<Self> {
        if support.len() != coefficients.len() {
            return Err(Error::LengthMismatch {
                expected: support.len(),
                actual: coefficients.len(),
            });
        }
        let mut pairs: Vec<(usize, Complex64)> = support.into_iter().zip(coefficients).collect();
        pairs.sort_by_key(|p| p.0);
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::invalid("support indices must be distinct"));
        }
        if pairs.last().is_some_and(|p| p.0 >= len) {
            return Err(Error::invalid(format!(
                "support index out of range for length {len}"
            )));
        }
        let (support, coefficients) = pairs.into_iter().unzip();
        Ok(Self {
            len,
            support,
            coefficients,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Sparsity `K`.
    pub fn sparsity(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut h = vec![Complex64::new(0.0, 0.0); self.len];
        for (&i, &v) in self.support.iter().zip(&self.coefficients) {
            h[i] = v;
        }
        h
    }

    pub fn norm_sq(&self) -> f64 {
        self.coefficients.iter().map(|v| v.norm_sqr()).sum()
    }
}

pub(crate) fn draw_coefficient<R: Rng>(rng: &mut R, model: MagnitudeModel) -> Complex64 {
    let phase = rng.random_range(0.0..2.0 * PI);
    let modulus = match model {
        MagnitudeModel::Unit => 1.0,
        MagnitudeModel::Rayleigh => {
            let power: f64 = Exp1.sample(rng);
            power.sqrt()
        }
    };
    Complex64::from_polar(modulus, phase)
}

/// Support drawn uniformly without replacement from `0..n`, phases
/// independent and uniform on `[0, 2pi)`.
pub fn generate_sparse_channel(
    n: usize,
    k: usize,
    model: MagnitudeModel,
    seed: u64,
) -> Result<SparseChannel> {
    if k > n {
        return Err(Error::invalid(format!(
            "sparsity K={k} exceeds length N={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut support = rand::seq::index::sample(&mut rng, n, k).into_vec();
    support.sort_unstable();
    let coefficients = support
        .iter()
        .map(|_| draw_coefficient(&mut rng, model))
        .collect();
    SparseChannel::new(n, support, coefficients)
}

/// Noise level actually applied to a measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub snr_db: f64,
    /// Per-sample complex noise variance.
    pub realized_sigma_sq: f64,
}

/// Noise variance for a clean measurement `y` at the given SNR:
/// `(||y||^2 / M) 10^(-snr/10)`.
pub fn noise_variance(y: &[Complex64], snr_db: f64) -> Result<f64> {
    if snr_db.is_nan() {
        return Err(Error::invalid("SNR must not be NaN"));
    }
    if snr_db == f64::INFINITY {
        return Ok(0.0);
    }
    let power: f64 = y.iter().map(|v| v.norm_sqr()).sum::<f64>() / y.len().max(1) as f64;
    if power.is_nan() || power <= 0.0 {
        return Err(Error::invalid("cannot set a finite SNR on a zero signal"));
    }
    Ok(power * 10f64.powf(-snr_db / 10.0))
}

/// Adds circular complex Gaussian noise to `y` at `snr_db` (signal power
/// per sample of `y`). `f64::INFINITY` leaves `y` untouched.
pub fn add_awgn(y: &[Complex64], snr_db: f64, seed: u64) -> Result<(Vec<Complex64>, NoiseSpec)> {
    let sigma_sq = noise_variance(y, snr_db)?;
    let mut out = y.to_vec();
    if sigma_sq > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scale = (sigma_sq / 2.0).sqrt();
        for v in &mut out {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            *v += Complex64::new(re, im) * scale;
        }
    }
    Ok((
        out,
        NoiseSpec {
            snr_db,
            realized_sigma_sq: sigma_sq,
        },
    ))
}
