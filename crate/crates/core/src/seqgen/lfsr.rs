//! Binary maximal-length sequences and the Gold / small-set Kasami families
//! built from them.
//!
//! A spec with taps `{s, k1, k2, ...}` encodes the feedback polynomial
//! `x^s + x^k1 + x^k2 + ... + 1`, i.e. the recurrence
//! `a(n+s) = a(n) ^ a(n+k1) ^ a(n+k2) ^ ...` over GF(2). The register is
//! seeded with `a(0..s)`.

use super::{FamilyKind, PeriodicSequence, SequenceFamily};
use crate::error::{Error, Result};

const MAX_DEGREE: u32 = 24;

// Primitive trinomials/pentanomials, degree -> taps.
const PRIMITIVE_TAPS: [(u32, &[u32]); 8] = [
    (3, &[3, 1]),
    (4, &[4, 1]),
    (5, &[5, 2]),
    (6, &[6, 1]),
    (7, &[7, 1]),
    (8, &[8, 4, 3, 2]),
    (9, &[9, 4]),
    (10, &[10, 3]),
];

const PREFERRED_PAIRS: [(u32, &[u32], &[u32]); 5] = [
    (5, &[5, 2], &[5, 4, 3, 2]),
    (6, &[6, 1], &[6, 5, 2, 1]),
    (7, &[7, 3], &[7, 3, 2, 1]),
    (9, &[9, 4], &[9, 6, 4, 3]),
    (10, &[10, 3], &[10, 8, 3, 2]),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfsrSpec {
    taps: Vec<u32>,
    seed: Vec<u8>,
}

impl LfsrSpec {
    /// `taps` are feedback polynomial exponents; the degree is the largest
    /// one. `seed` holds the first `degree` output bits.
    pub fn new(taps: &[u32], seed: Vec<u8>) -> Result<Self> {
        let mut taps = taps.to_vec();
        taps.sort_unstable_by(|a, b| b.cmp(a));
        taps.dedup();
        let degree = *taps
            .first()
            .ok_or_else(|| Error::invalid("LFSR needs at least one tap"))?;
        if taps.contains(&0) {
            return Err(Error::invalid("tap 0 is implicit and must not be listed"));
        }
        if !(2..=MAX_DEGREE).contains(&degree) {
            return Err(Error::invalid(format!(
                "LFSR degree {degree} outside supported range 2..={MAX_DEGREE}"
            )));
        }
        if seed.len() != degree as usize {
            return Err(Error::LengthMismatch {
                expected: degree as usize,
                actual: seed.len(),
            });
        }
        if seed.iter().any(|&b| b > 1) {
            return Err(Error::invalid("seed entries must be bits"));
        }
        if seed.iter().all(|&b| b == 0) {
            return Err(Error::invalid("LFSR seed must not be all-zero"));
        }
        Ok(Self { taps, seed })
    }

    /// Taps with the default seed `1, 0, ..., 0`.
    pub fn with_taps(taps: &[u32]) -> Result<Self> {
        let degree = taps.iter().copied().max().unwrap_or(0) as usize;
        let mut seed = vec![0u8; degree];
        if let Some(first) = seed.first_mut() {
            *first = 1;
        }
        Self::new(taps, seed)
    }

    /// Built-in primitive polynomial for degrees 3 through 10.
    pub fn primitive(degree: u32) -> Result<Self> {
        let taps = PRIMITIVE_TAPS
            .iter()
            .find(|(d, _)| *d == degree)
            .map(|(_, t)| *t)
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "no built-in primitive polynomial of degree {degree}"
                ))
            })?;
        Self::with_taps(taps)
    }

    pub fn degree(&self) -> u32 {
        self.taps[0]
    }

    pub fn taps(&self) -> &[u32] {
        &self.taps
    }

    pub fn seed(&self) -> &[u8] {
        &self.seed
    }

    pub fn period(&self) -> usize {
        (1usize << self.degree()) - 1
    }

    pub fn with_seed(&self, seed: Vec<u8>) -> Result<Self> {
        Self::new(&self.taps, seed)
    }
}

/// One period of the LFSR output bits. Fails if the state cycle is shorter
/// than `2^s - 1`.
pub fn m_sequence_bits(spec: &LfsrSpec) -> Result<Vec<u8>> {
    let s = spec.degree() as usize;
    let period = spec.period();
    let inner: Vec<usize> = spec.taps[1..].iter().map(|&k| k as usize).collect();

    let mut bits = Vec::with_capacity(period + s);
    bits.extend_from_slice(&spec.seed);
    for n in 0..period {
        let fb = inner.iter().fold(bits[n], |acc, &k| acc ^ bits[n + k]);
        bits.push(fb);
    }
    // state at step n is bits[n..n+s]; it must first return to the seed at n = period
    if let Some(p) = (1..period).find(|&n| bits[n..n + s] == spec.seed[..]) {
        return Err(Error::NonPrimitivePolynomial {
            taps: spec.taps.clone(),
            period: p,
            expected: period,
        });
    }
    bits.truncate(period);
    Ok(bits)
}

/// Unit-energy `+-1/sqrt(M)` m-sequence.
pub fn m_sequence(spec: &LfsrSpec) -> Result<PeriodicSequence> {
    PeriodicSequence::from_bits(&m_sequence_bits(spec)?)
}

/// Single-member family holding one m-sequence.
pub fn m_sequence_family(spec: &LfsrSpec) -> Result<SequenceFamily> {
    SequenceFamily::new(FamilyKind::MSequence, vec![m_sequence(spec)?])
}

/// Built-in preferred pair of degree `s`.
pub fn preferred_pair(s: u32) -> Result<(LfsrSpec, LfsrSpec)> {
    if s.is_multiple_of(4) {
        return Err(Error::NoPreferredPair(s));
    }
    let (_, a, b) = PREFERRED_PAIRS
        .iter()
        .find(|(d, _, _)| *d == s)
        .ok_or_else(|| Error::Unsupported(format!("no built-in preferred pair of degree {s}")))?;
    Ok((LfsrSpec::with_taps(a)?, LfsrSpec::with_taps(b)?))
}

/// Gold family of size `M + 2`: both m-sequences of the pair followed by
/// `u ^ shift(v, j)` for `j = 0..M`.
pub fn gold_family(s: u32, pair: (&LfsrSpec, &LfsrSpec)) -> Result<SequenceFamily> {
    if s.is_multiple_of(4) {
        return Err(Error::NoPreferredPair(s));
    }
    let (pu, pv) = pair;
    if pu.degree() != s || pv.degree() != s {
        return Err(Error::invalid(format!(
            "pair degrees ({}, {}) do not match s={s}",
            pu.degree(),
            pv.degree()
        )));
    }
    let u = m_sequence_bits(pu)?;
    let v = m_sequence_bits(pv)?;
    let m = u.len();

    let mut sequences = Vec::with_capacity(m + 2);
    sequences.push(PeriodicSequence::from_bits(&u)?);
    sequences.push(PeriodicSequence::from_bits(&v)?);
    for shift in 0..m {
        let bits: Vec<u8> = (0..m).map(|k| u[k] ^ v[(k + shift) % m]).collect();
        sequences.push(PeriodicSequence::from_bits(&bits)?);
    }
    SequenceFamily::new(FamilyKind::Gold, sequences)
}

/// Gold family from the built-in preferred pair of degree `s`.
pub fn gold_family_default(s: u32) -> Result<SequenceFamily> {
    let (a, b) = preferred_pair(s)?;
    gold_family(s, (&a, &b))
}

/// Small-set Kasami family of size `2^(s/2)` for even `s >= 4`.
///
/// Members are the base m-sequence `u` and `u ^ shift(w, j)` for
/// `j = 0..2^(s/2)-1`, where `w(k) = u(k * (2^(s/2) + 1))`.
pub fn kasami_family(s: u32) -> Result<SequenceFamily> {
    if s % 2 == 1 || s < 4 {
        return Err(Error::invalid(format!(
            "small-set Kasami family needs even s >= 4, got {s}"
        )));
    }
    let u = m_sequence_bits(&LfsrSpec::primitive(s)?)?;
    let m = u.len();
    let half = 1usize << (s / 2);
    let decimation = half + 1;
    let w: Vec<u8> = (0..m).map(|k| u[(k * decimation) % m]).collect();

    let mut sequences = Vec::with_capacity(half);
    sequences.push(PeriodicSequence::from_bits(&u)?);
    for shift in 0..half - 1 {
        let bits: Vec<u8> = (0..m).map(|k| u[k] ^ w[(k + shift) % m]).collect();
        sequences.push(PeriodicSequence::from_bits(&bits)?);
    }
    SequenceFamily::new(FamilyKind::Kasami, sequences)
}
