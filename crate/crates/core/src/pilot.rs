//! Cyclic-shift pilot assignment.
//!
//! Transmitters are grouped `M/L` at a time onto one base sequence; within a
//! group the `j`-th transmitter emits the base shifted left by `j*L`, mapped
//! through [`pilot_from_base`]. The receiver then sees the concatenation of
//! `q = tL/M` full circulants, one per base.
//!
//! Transmitter and base labels are 1-based (`1..=t`, `1..=q`); shifts and
//! sequence positions are 0-based.

use crate::error::{Error, Result};
use crate::seqgen::{PeriodicSequence, SequenceFamily};

/// Base label and left shift for transmitter `i` (1-based).
///
/// `base = ceil(i*L/M)` and `shift = ((i - 1) mod (M/L)) * L`, so the
/// transmitters of each base take shifts `0, L, ..., M-L` in order.
pub fn shift_index(i: usize, m: usize, l: usize) -> Result<(usize, usize)> {
    if i == 0 {
        return Err(Error::invalid("transmitter index is 1-based"));
    }
    if l == 0 || l > m || !m.is_multiple_of(l) {
        return Err(Error::config(format!("M={m} is not a multiple of L={l}")));
    }
    let per_base = m / l;
    let base = (i * l).div_ceil(m);
    let shift = ((i - 1) % per_base) * l;
    Ok((base, shift))
}

/// The pilot whose linear-to-circular folded convolution matrix equals the
/// first `l` columns of the circulant with first row `base`.
///
/// Entry `j` of the pilot is `base((L - 1 - j) mod M)`. The index map is an
/// involution, so applying this function twice returns `base`.
pub fn pilot_from_base(base: &PeriodicSequence, l: usize) -> Result<PeriodicSequence> {
    let m = base.period();
    if l == 0 || l > m {
        return Err(Error::invalid(format!(
            "channel length L={l} must lie in [1, {m}]"
        )));
    }
    let b = base.values();
    let values = (0..m).map(|j| b[(l + m - 1 - j) % m]).collect();
    PeriodicSequence::new(values)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PilotAssignment {
    /// 1-based transmitter label.
    pub transmitter: usize,
    /// 1-based label of the base sequence within the plan.
    pub base: usize,
    /// Left cyclic shift applied to the base, a multiple of `L`.
    pub shift: usize,
    /// The emitted waveform.
    pub pilot: PeriodicSequence,
}

#[derive(Debug, Clone)]
pub struct PilotPlan {
    assignments: Vec<PilotAssignment>,
    m: usize,
    l: usize,
    t: usize,
    bases: SequenceFamily,
    base_indices: Vec<usize>,
}

impl PilotPlan {
    pub fn assignments(&self) -> &[PilotAssignment] {
        &self.assignments
    }

    /// Pilot period (number of measurements).
    pub fn m(&self) -> usize {
        self.m
    }

    /// Maximum channel length.
    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of transmitters.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Number of base sequences.
    pub fn q(&self) -> usize {
        self.bases.len()
    }

    /// Combined channel length `tL = qM`.
    pub fn n(&self) -> usize {
        self.t * self.l
    }

    /// The base sequences, in plan order.
    pub fn bases(&self) -> &SequenceFamily {
        &self.bases
    }

    /// 0-based positions of the bases within the source family.
    pub fn base_indices(&self) -> &[usize] {
        &self.base_indices
    }
}

fn validate_dimensions(family: &SequenceFamily, t: usize, m: usize, l: usize) -> Result<usize> {
    if family.period() != m {
        return Err(Error::config(format!(
            "family period {} does not match M={m}",
            family.period()
        )));
    }
    if t == 0 {
        return Err(Error::config("need at least one transmitter"));
    }
    if l == 0 || l > m {
        return Err(Error::config(format!("L={l} must lie in [1, M={m}]")));
    }
    if !m.is_multiple_of(l) {
        return Err(Error::config(format!(
            "M mod L == 0 violated: M={m}, L={l}"
        )));
    }
    if !(t * l).is_multiple_of(m) {
        return Err(Error::config(format!(
            "tL mod M == 0 violated: tL={} is not divisible by M={m}",
            t * l
        )));
    }
    Ok(t * l / m)
}

/// Assigns pilots using the first `q = tL/M` members of `family` as bases.
pub fn assign_pilots(family: &SequenceFamily, t: usize, m: usize, l: usize) -> Result<PilotPlan> {
    let q = validate_dimensions(family, t, m, l)?;
    if q > family.len() {
        return Err(Error::InsufficientFamily {
            required: q,
            available: family.len(),
        });
    }
    let indices: Vec<usize> = (0..q).collect();
    assign_pilots_with_bases(family, t, m, l, &indices)
}

/// Assigns pilots using the family members at `base_indices` (0-based) as bases.
pub fn assign_pilots_with_bases(
    family: &SequenceFamily,
    t: usize,
    m: usize,
    l: usize,
    base_indices: &[usize],
) -> Result<PilotPlan> {
    let q = validate_dimensions(family, t, m, l)?;
    if q > family.len() {
        return Err(Error::InsufficientFamily {
            required: q,
            available: family.len(),
        });
    }
    if base_indices.len() != q {
        return Err(Error::config(format!(
            "{} base indices given but q = tL/M = {q}",
            base_indices.len()
        )));
    }
    let mut seen = base_indices.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != base_indices.len() {
        return Err(Error::config("base indices must be distinct"));
    }
    let bases = family.subset(base_indices)?;

    let assignments = (1..=t)
        .map(|i| {
            let (base, shift) = shift_index(i, m, l)?;
            let source = bases.sequences()[base - 1].shifted_left(shift);
            Ok(PilotAssignment {
                transmitter: i,
                base,
                shift,
                pilot: pilot_from_base(&source, l)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(PilotPlan {
        assignments,
        m,
        l,
        t,
        bases,
        base_indices: base_indices.to_vec(),
    })
}
