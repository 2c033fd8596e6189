//! Plain-text file formats.
//!
//! Complex numbers are written `re+imj` / `re-imj` using the shortest
//! round-tripping decimal form of each part, so write-then-read is exact.
//!
//! - family file: `# family kind=.. M=.. T=.. theta_a=.. theta_c=..`, then one
//!   sequence per line, entries separated by commas.
//! - plan manifest: `# plan M=.. L=.. t=.. q=.. bases=i,j,..`, then one
//!   `transmitter,base,shift` line per transmitter.
//! - channel file: `# channel N=.. K=..`, then one `index,coefficient` line
//!   per nonzero tap (0-based index).
//! - vector file: one coefficient per line.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use num_complex::Complex64;

use crate::channel::SparseChannel;
use crate::error::{Error, Result};
use crate::pilot::{assign_pilots_with_bases, PilotPlan};
use crate::seqgen::{FamilyKind, PeriodicSequence, SequenceFamily};

pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:?}{}{:?}j", z.re, sign, z.im.abs())
}

pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::invalid(format!("malformed complex number `{s}`"));
    let s = s.trim();
    let body = s.strip_suffix('j').ok_or_else(bad)?;
    let bytes = body.as_bytes();
    // split at the last sign that is not leading and not part of an exponent
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let re: f64 = body[..split].parse().map_err(|_| bad())?;
    let im: f64 = body[split + 1..].parse().map_err(|_| bad())?;
    Ok(Complex64::new(
        re,
        if bytes[split] == b'-' { -im } else { im },
    ))
}

fn header_fields(line: &str, tag: &str, lineno: usize) -> Result<HashMap<String, String>> {
    let rest = line
        .trim()
        .strip_prefix('#')
        .map(str::trim)
        .and_then(|l| l.strip_prefix(tag))
        .ok_or_else(|| Error::Parse {
            line: lineno,
            message: format!("expected `# {tag} ...` header"),
        })?;
    rest.split_whitespace()
        .map(|tok| {
            tok.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| Error::Parse {
                    line: lineno,
                    message: format!("expected key=value, found `{tok}`"),
                })
        })
        .collect()
}

fn field<T: std::str::FromStr>(
    fields: &HashMap<String, String>,
    key: &str,
    lineno: usize,
) -> Result<T> {
    fields
        .get(key)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse {
            line: lineno,
            message: format!("missing or malformed `{key}`"),
        })
}

fn content_lines<R: BufRead>(reader: R) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push((i + 1, line));
        }
    }
    Ok(out)
}

fn parse_entries(line: &str, lineno: usize) -> Result<Vec<Complex64>> {
    line.split(',')
        .map(|tok| {
            parse_complex(tok).map_err(|e| Error::Parse {
                line: lineno,
                message: e.to_string(),
            })
        })
        .collect()
}

pub fn write_family<W: Write>(mut w: W, family: &SequenceFamily) -> Result<()> {
    let theta_c = family
        .theta_c()
        .map(|v| format!("{v:?}"))
        .unwrap_or_else(|| "none".to_string());
    writeln!(
        w,
        "# family kind={} M={} T={} theta_a={:?} theta_c={}",
        family.kind(),
        family.period(),
        family.len(),
        family.theta_a(),
        theta_c
    )?;
    for s in family.sequences() {
        let line: Vec<String> = s.values().iter().map(|&v| format_complex(v)).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

/// Reads a family file; the profile is recomputed from the entries.
pub fn read_family<R: BufRead>(reader: R) -> Result<SequenceFamily> {
    let lines = content_lines(reader)?;
    let (hl, header) = lines.first().ok_or(Error::Parse {
        line: 1,
        message: "empty family file".into(),
    })?;
    let fields = header_fields(header, "family", *hl)?;
    let kind: FamilyKind = field::<String>(&fields, "kind", *hl)?.parse()?;
    let m: usize = field(&fields, "M", *hl)?;
    let t: usize = field(&fields, "T", *hl)?;
    let sequences = lines[1..]
        .iter()
        .map(|(n, l)| {
            let values = parse_entries(l, *n)?;
            if values.len() != m {
                return Err(Error::Parse {
                    line: *n,
                    message: format!("expected {m} entries, found {}", values.len()),
                });
            }
            PeriodicSequence::new(values)
        })
        .collect::<Result<Vec<_>>>()?;
    if sequences.len() != t {
        return Err(Error::Parse {
            line: *hl,
            message: format!(
                "header declares T={t} but file holds {} sequences",
                sequences.len()
            ),
        });
    }
    SequenceFamily::new(kind, sequences)
}

pub fn write_plan<W: Write>(mut w: W, plan: &PilotPlan) -> Result<()> {
    let bases: Vec<String> = plan.base_indices().iter().map(|i| i.to_string()).collect();
    writeln!(
        w,
        "# plan M={} L={} t={} q={} bases={}",
        plan.m(),
        plan.l(),
        plan.t(),
        plan.q(),
        bases.join(",")
    )?;
    for a in plan.assignments() {
        writeln!(w, "{},{},{}", a.transmitter, a.base, a.shift)?;
    }
    Ok(())
}

/// Parsed plan manifest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanManifest {
    pub m: usize,
    pub l: usize,
    pub t: usize,
    pub q: usize,
    pub base_indices: Vec<usize>,
    /// `(transmitter, base, shift)` rows.
    pub rows: Vec<(usize, usize, usize)>,
}

impl PlanManifest {
    /// Rebuilds the plan from the source family and checks every row against it.
    pub fn rebuild(&self, family: &SequenceFamily) -> Result<PilotPlan> {
        let plan = assign_pilots_with_bases(family, self.t, self.m, self.l, &self.base_indices)?;
        let rows: Vec<_> = plan
            .assignments()
            .iter()
            .map(|a| (a.transmitter, a.base, a.shift))
            .collect();
        if rows != self.rows || plan.q() != self.q {
            return Err(Error::config(
                "plan manifest disagrees with the rebuilt assignment",
            ));
        }
        Ok(plan)
    }
}

pub fn read_plan<R: BufRead>(reader: R) -> Result<PlanManifest> {
    let lines = content_lines(reader)?;
    let (hl, header) = lines.first().ok_or(Error::Parse {
        line: 1,
        message: "empty plan manifest".into(),
    })?;
    let fields = header_fields(header, "plan", *hl)?;
    let base_indices = field::<String>(&fields, "bases", *hl)?
        .split(',')
        .map(|s| s.parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Parse {
            line: *hl,
            message: "malformed `bases`".into(),
        })?;
    let rows = lines[1..]
        .iter()
        .map(|(n, l)| {
            let parts: Vec<usize> = l
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse {
                    line: *n,
                    message: format!("malformed plan row `{l}`"),
                })?;
            match parts[..] {
                [i, b, s] => Ok((i, b, s)),
                _ => Err(Error::Parse {
                    line: *n,
                    message: "expected transmitter,base,shift".into(),
                }),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PlanManifest {
        m: field(&fields, "M", *hl)?,
        l: field(&fields, "L", *hl)?,
        t: field(&fields, "t", *hl)?,
        q: field(&fields, "q", *hl)?,
        base_indices,
        rows,
    })
}

pub fn write_channel<W: Write>(mut w: W, h: &SparseChannel) -> Result<()> {
    writeln!(w, "# channel N={} K={}", h.len(), h.sparsity())?;
    for (&i, &v) in h.support().iter().zip(h.coefficients()) {
        writeln!(w, "{i},{}", format_complex(v))?;
    }
    Ok(())
}

pub fn read_channel<R: BufRead>(reader: R) -> Result<SparseChannel> {
    let lines = content_lines(reader)?;
    let (hl, header) = lines.first().ok_or(Error::Parse {
        line: 1,
        message: "empty channel file".into(),
    })?;
    let fields = header_fields(header, "channel", *hl)?;
    let n: usize = field(&fields, "N", *hl)?;
    let mut support = Vec::new();
    let mut coefficients = Vec::new();
    for (lineno, l) in &lines[1..] {
        let (idx, val) = l.split_once(',').ok_or_else(|| Error::Parse {
            line: *lineno,
            message: "expected index,coefficient".into(),
        })?;
        support.push(idx.trim().parse::<usize>().map_err(|_| Error::Parse {
            line: *lineno,
            message: format!("bad index `{idx}`"),
        })?);
        coefficients.push(parse_complex(val).map_err(|e| Error::Parse {
            line: *lineno,
            message: e.to_string(),
        })?);
    }
    SparseChannel::new(n, support, coefficients)
}

/// Sparse channel holding the nonzero entries of a dense vector.
pub fn channel_from_dense(h: &[Complex64]) -> SparseChannel {
    let support: Vec<usize> = (0..h.len())
        .filter(|&i| h[i] != Complex64::new(0.0, 0.0))
        .collect();
    let coefficients = support.iter().map(|&i| h[i]).collect();
    SparseChannel::new(h.len(), support, coefficients).expect("indices are distinct and in range")
}

pub fn write_vector<W: Write>(mut w: W, v: &[Complex64]) -> Result<()> {
    for &z in v {
        writeln!(w, "{}", format_complex(z))?;
    }
    Ok(())
}

pub fn read_vector<R: BufRead>(reader: R) -> Result<Vec<Complex64>> {
    content_lines(reader)?
        .into_iter()
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
        .map(|(n, l)| {
            parse_complex(&l).map_err(|e| Error::Parse {
                line: n,
                message: e.to_string(),
            })
        })
        .collect()
}
