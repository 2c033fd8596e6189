//! Deterministic periodic sequence families.
//!
//! All sequences are normalized to unit energy, so `|values(k)| = 1/sqrt(M)`
//! for the constant-modulus constructions here. Entries are indexed
//! `k = 0..M-1`.

mod fzc;
mod lfsr;

pub use fzc::{fzc_family, fzc_family_roots, fzc_sequence, mod_inverse, smallest_prime_divisor};
pub use lfsr::{
    gold_family, gold_family_default, kasami_family, m_sequence, m_sequence_bits,
    m_sequence_family, preferred_pair, LfsrSpec,
};

use std::fmt;

use num_complex::Complex64;

use crate::correlation::{self, CorrelationProfile};
use crate::error::{Error, Result};

/// Tolerance on the unit-energy invariant.
pub const ENERGY_TOL: f64 = 1e-12;

/// A complex sequence of period `M` with unit energy.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSequence {
    values: Vec<Complex64>,
}

impl PeriodicSequence {
    /// Wraps `values`, which must already have unit energy.
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("sequence must have positive period"));
        }
        let energy: f64 = values.iter().map(|v| v.norm_sqr()).sum();
        if !energy.is_finite() || (energy - 1.0).abs() > ENERGY_TOL {
            return Err(Error::invalid(format!(
                "sequence energy {energy} is not 1 within {ENERGY_TOL}"
            )));
        }
        Ok(Self { values })
    }

    /// Scales `values` to unit energy.
    pub fn normalized(values: Vec<Complex64>) -> Result<Self> {
        let energy: f64 = values.iter().map(|v| v.norm_sqr()).sum();
        if values.is_empty() || !(energy.is_finite() && energy > 0.0) {
            return Err(Error::invalid(
                "cannot normalize an empty or zero-energy sequence",
            ));
        }
        let scale = energy.sqrt().recip();
        Self::new(values.into_iter().map(|v| v * scale).collect())
    }

    /// Maps bits to `+1/sqrt(M)` (bit 0) and `-1/sqrt(M)` (bit 1).
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::invalid("sequence must have positive period"));
        }
        let amp = (bits.len() as f64).sqrt().recip();
        let values = bits
            .iter()
            .map(|&b| Complex64::new(if b & 1 == 0 { amp } else { -amp }, 0.0))
            .collect();
        Self::new(values)
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Entry at `k` with periodic extension.
    pub fn at(&self, k: i64) -> Complex64 {
        let m = self.values.len() as i64;
        self.values[k.rem_euclid(m) as usize]
    }

    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    /// Left cyclic shift by `m`: entry `k` of the result is entry `k + m` of `self`.
    pub fn shifted_left(&self, m: usize) -> Self {
        let mut values = self.values.clone();
        let len = values.len();
        values.rotate_left(m % len);
        Self { values }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Fzc,
    Gold,
    Kasami,
    MSequence,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Fzc => "fzc",
            FamilyKind::Gold => "gold",
            FamilyKind::Kasami => "kasami",
            FamilyKind::MSequence => "msequence",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fzc" | "zadoff-chu" | "zc" => Ok(FamilyKind::Fzc),
            "gold" => Ok(FamilyKind::Gold),
            "kasami" => Ok(FamilyKind::Kasami),
            "msequence" | "m-sequence" | "mseq" => Ok(FamilyKind::MSequence),
            other => Err(Error::invalid(format!("unknown family kind `{other}`"))),
        }
    }
}

/// A set of equal-period sequences together with its correlation profile.
#[derive(Debug, Clone)]
pub struct SequenceFamily {
    kind: FamilyKind,
    sequences: Vec<PeriodicSequence>,
    profile: CorrelationProfile,
}

impl SequenceFamily {
    /// Builds a family and computes its profile.
    pub fn new(kind: FamilyKind, sequences: Vec<PeriodicSequence>) -> Result<Self> {
        let profile = correlation::profile_of(&sequences)?;
        Ok(Self {
            kind,
            sequences,
            profile,
        })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn sequences(&self) -> &[PeriodicSequence] {
        &self.sequences
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn period(&self) -> usize {
        self.profile.period
    }

    pub fn profile(&self) -> &CorrelationProfile {
        &self.profile
    }

    pub fn theta_a(&self) -> f64 {
        self.profile.theta_a
    }

    pub fn theta_c(&self) -> Option<f64> {
        self.profile.theta_c
    }

    /// Sub-family made of the members at `indices` (0-based), in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let sequences = indices
            .iter()
            .map(|&i| {
                self.sequences.get(i).cloned().ok_or_else(|| {
                    Error::invalid(format!(
                        "index {i} out of range for family of {}",
                        self.len()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.kind, sequences)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_unit_energy() {
        let v = vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(PeriodicSequence::new(v.clone()).is_err());
        let s = PeriodicSequence::normalized(v).unwrap();
        assert!((s.energy() - 1.0).abs() < ENERGY_TOL);
    }

    #[test]
    fn left_shift_matches_definition() {
        let s = PeriodicSequence::normalized(
            (0..7)
                .map(|k| Complex64::new(k as f64 + 1.0, -(k as f64)))
                .collect(),
        )
        .unwrap();
        let t = s.shifted_left(3);
        for k in 0..7 {
            assert_eq!(t.values()[k], s.at(k as i64 + 3));
        }
        assert_eq!(s.shifted_left(7), s);
    }

    #[test]
    fn bits_map_to_signed_amplitudes() {
        let s = PeriodicSequence::from_bits(&[0, 1, 1, 0]).unwrap();
        assert_eq!(s.values()[0].re, 0.5);
        assert_eq!(s.values()[1].re, -0.5);
    }

    #[test]
    fn family_kind_round_trips_through_name() {
        for kind in [
            FamilyKind::Fzc,
            FamilyKind::Gold,
            FamilyKind::Kasami,
            FamilyKind::MSequence,
        ] {
            assert_eq!(kind.name().parse::<FamilyKind>().unwrap(), kind);
        }
    }

    #[test]
    fn family_rejects_mixed_periods() {
        let a = PeriodicSequence::from_bits(&[0, 1, 1]).unwrap();
        let b = PeriodicSequence::from_bits(&[0, 1, 1, 1]).unwrap();
        assert!(SequenceFamily::new(FamilyKind::MSequence, vec![a, b]).is_err());
    }
}
