use std::f64::consts::PI;

use num_complex::Complex64;

use super::{FamilyKind, PeriodicSequence, SequenceFamily};
use crate::error::{Error, Result};

/// Least prime dividing `m`, by trial division.
pub fn smallest_prime_divisor(m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::invalid(format!(
            "smallest prime divisor needs m >= 2, got {m}"
        )));
    }
    if m.is_multiple_of(2) {
        return Ok(2);
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            return Ok(d);
        }
        d += 2;
    }
    Ok(m)
}

/// The `u` in `[1, m-1]` with `i * u == 1 (mod m)`.
pub fn mod_inverse(i: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::invalid(format!("modulus must be >= 2, got {m}")));
    }
    // extended Euclid on (i mod m, m)
    let (mut r0, mut r1) = (m as i128, (i % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NoInverse {
            value: i,
            modulus: m,
        });
    }
    Ok(t0.rem_euclid(m as i128) as u64)
}

/// Frank-Zadoff-Chu sequence with root `u` and period `m`, scaled by `1/sqrt(m)`.
///
/// Odd `m` uses the phase `pi*u*k*(k+1)/m`, even `m` uses `pi*u*k^2/m`. The
/// integer part of the phase is reduced modulo `2m` before conversion to
/// floating point.
pub fn fzc_sequence(u: u64, m: u64) -> Result<PeriodicSequence> {
    if m < 2 || u == 0 || u >= m {
        return Err(Error::invalid(format!(
            "FZC root u={u} must lie in [1, {}]",
            m.saturating_sub(1)
        )));
    }
    let two_m = 2 * m as u128;
    let amp = (m as f64).sqrt().recip();
    let values = (0..m as u128)
        .map(|k| {
            let e = if m % 2 == 1 { k * (k + 1) } else { k * k };
            let r = (u as u128 * (e % two_m)) % two_m;
            Complex64::from_polar(amp, PI * r as f64 / m as f64)
        })
        .collect();
    PeriodicSequence::new(values)
}

/// Sarwate's FZC family for odd `m`: roots `u_i = i^{-1} mod m` for
/// `i = 1..p-1`, where `p` is the smallest prime divisor of `m`.
pub fn fzc_family(m: u64) -> Result<SequenceFamily> {
    if m < 3 {
        return Err(Error::invalid(format!("FZC family needs m >= 3, got {m}")));
    }
    if m.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "FZC family construction requires odd period, got {m}"
        )));
    }
    let p = smallest_prime_divisor(m)?;
    let sequences = (1..p)
        .map(|i| fzc_sequence(mod_inverse(i, m)?, m))
        .collect::<Result<Vec<_>>>()?;
    SequenceFamily::new(FamilyKind::Fzc, sequences)
}

/// Roots used by [`fzc_family`], in family order.
pub fn fzc_family_roots(m: u64) -> Result<Vec<u64>> {
    let p = smallest_prime_divisor(m)?;
    (1..p).map(|i| mod_inverse(i, m)).collect()
}
