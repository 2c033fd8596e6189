//! Periodic correlation functions and the bounds that constrain them.
//!
//! The crosscorrelation at lag `l` is `sum_k a(k) * conj(b(k + l))` with
//! indices taken modulo the period. All lags are computed at once in the
//! frequency domain: with `A`, `B` the DFTs, `conj(IDFT(conj(A) * B))`
//! produces exactly that convention.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::seqgen::{PeriodicSequence, SequenceFamily};
use crate::spectral::Dft;

/// Worst-case correlation magnitudes of a family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationProfile {
    /// Largest out-of-phase autocorrelation magnitude.
    pub theta_a: f64,
    /// Largest crosscorrelation magnitude over distinct members and all lags;
    /// `None` for a single-member family.
    pub theta_c: Option<f64>,
    pub family_size: usize,
    pub period: usize,
}

impl CorrelationProfile {
    /// `max(theta_a, theta_c)`, the coherence bound for operators built on the family.
    pub fn max_correlation(&self) -> f64 {
        self.theta_a.max(self.theta_c.unwrap_or(0.0))
    }
}

fn check_periods(a: &PeriodicSequence, b: &PeriodicSequence) -> Result<()> {
    if a.period() != b.period() {
        return Err(Error::invalid(format!(
            "period mismatch: {} vs {}",
            a.period(),
            b.period()
        )));
    }
    Ok(())
}

/// Periodic crosscorrelation of `a` and `b` at a single lag (direct sum).
pub fn periodic_crosscorr(
    a: &PeriodicSequence,
    b: &PeriodicSequence,
    lag: i64,
) -> Result<Complex64> {
    check_periods(a, b)?;
    let m = a.period() as i64;
    let shift = lag.rem_euclid(m) as usize;
    let (av, bv) = (a.values(), b.values());
    let m = m as usize;
    Ok((0..m).map(|k| av[k] * bv[(k + shift) % m].conj()).sum())
}

/// Crosscorrelation at every lag `0..M`, by direct `O(M^2)` summation.
pub fn crosscorr_naive(a: &PeriodicSequence, b: &PeriodicSequence) -> Result<Vec<Complex64>> {
    check_periods(a, b)?;
    (0..a.period() as i64)
        .map(|l| periodic_crosscorr(a, b, l))
        .collect()
}

/// Crosscorrelation at every lag `0..M`, via the DFT.
pub fn crosscorr_all(a: &PeriodicSequence, b: &PeriodicSequence) -> Result<Vec<Complex64>> {
    check_periods(a, b)?;
    let dft = Dft::new(a.period());
    Ok(crosscorr_from_spectra(
        &dft,
        &dft.spectrum(a.values()),
        &dft.spectrum(b.values()),
    ))
}

pub(crate) fn crosscorr_from_spectra(
    dft: &Dft,
    sa: &[Complex64],
    sb: &[Complex64],
) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = sa.iter().zip(sb).map(|(x, y)| x.conj() * y).collect();
    dft.inverse(&mut buf);
    buf.iter_mut().for_each(|v| *v = v.conj());
    buf
}

fn out_of_phase_max(corr: &[Complex64]) -> f64 {
    corr.iter().skip(1).map(|c| c.norm()).fold(0.0, f64::max)
}

fn all_lag_max(corr: &[Complex64]) -> f64 {
    corr.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn check_family(sequences: &[PeriodicSequence]) -> Result<usize> {
    let first = sequences
        .first()
        .ok_or_else(|| Error::invalid("family must be nonempty"))?;
    let m = first.period();
    if let Some(bad) = sequences.iter().find(|s| s.period() != m) {
        return Err(Error::invalid(format!(
            "family members must share period {m}, found {}",
            bad.period()
        )));
    }
    Ok(m)
}

/// Profile of a set of equal-period sequences, by DFT correlation.
pub fn profile_of(sequences: &[PeriodicSequence]) -> Result<CorrelationProfile> {
    let m = check_family(sequences)?;
    let dft = Dft::new(m);
    let spectra: Vec<Vec<Complex64>> = sequences.iter().map(|s| dft.spectrum(s.values())).collect();
    let t = sequences.len();

    let theta_a = spectra
        .par_iter()
        .map(|s| out_of_phase_max(&crosscorr_from_spectra(&dft, s, s)))
        .reduce(|| 0.0, f64::max);
    // |theta(b, a)(l)| = |theta(a, b)(-l)|, so unordered pairs cover every lag
    let theta_c = (t > 1).then(|| {
        (0..t)
            .into_par_iter()
            .map(|u| {
                (u + 1..t)
                    .map(|v| all_lag_max(&crosscorr_from_spectra(&dft, &spectra[u], &spectra[v])))
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max)
    });
    Ok(CorrelationProfile {
        theta_a,
        theta_c,
        family_size: t,
        period: m,
    })
}

/// Profile by direct double loop over members and lags; the reference for
/// [`profile_of`].
pub fn profile_naive(sequences: &[PeriodicSequence]) -> Result<CorrelationProfile> {
    let m = check_family(sequences)?;
    let t = sequences.len();
    let mut theta_a: f64 = 0.0;
    let mut theta_c: Option<f64> = None;
    for (u, a) in sequences.iter().enumerate() {
        for (v, b) in sequences.iter().enumerate() {
            let corr = crosscorr_naive(a, b)?;
            if u == v {
                theta_a = theta_a.max(out_of_phase_max(&corr));
            } else {
                theta_c = Some(theta_c.unwrap_or(0.0).max(all_lag_max(&corr)));
            }
        }
    }
    Ok(CorrelationProfile {
        theta_a,
        theta_c,
        family_size: t,
        period: m,
    })
}

/// Recomputes the profile of `family` from its members.
pub fn correlation_profile(family: &SequenceFamily) -> CorrelationProfile {
    // a constructed family is nonempty with equal periods
    profile_of(family.sequences()).expect("family invariants")
}

/// Left-hand side of Sarwate's tradeoff,
/// `theta_c^2 / M + (M - 1) / (M (T - 1)) * theta_a^2 / M`,
/// which is at least `1 / M^2` for every unit-energy family.
pub fn sarwate_lhs(profile: &CorrelationProfile) -> Result<f64> {
    let t = profile.family_size;
    let theta_c = match profile.theta_c {
        Some(c) if t >= 2 => c,
        _ => {
            return Err(Error::invalid(format!(
                "Sarwate bound needs at least two sequences, family has {t}"
            )))
        }
    };
    let m = profile.period as f64;
    let t = t as f64;
    Ok(theta_c * theta_c / m
        + (m - 1.0) / (m * (t - 1.0)) * (profile.theta_a * profile.theta_a / m))
}

/// The right-hand side `1 / M^2` of Sarwate's tradeoff.
pub fn sarwate_bound(period: usize) -> f64 {
    let m = period as f64;
    (m * m).recip()
}

/// Welch lower bound `sqrt((N - M) / (M (N - 1)))` on the coherence of any
/// `M x N` matrix with unit-norm columns.
pub fn welch_bound(m: usize, n: usize) -> Result<f64> {
    if m < 1 || n < 2 || n < m {
        return Err(Error::invalid(format!(
            "Welch bound needs N >= M >= 1 and N >= 2, got M={m}, N={n}"
        )));
    }
    let (m, n) = (m as f64, n as f64);
    Ok(((n - m) / (m * (n - 1.0))).sqrt())
}
