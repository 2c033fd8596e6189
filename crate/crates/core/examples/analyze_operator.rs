//! Coherence and spectral-norm certificate for several base families.

use pilotcs::operator::{LogBase, MeasurementOperator};
use pilotcs::seqgen::{fzc_family, gold_family_default, kasami_family};

fn main() -> pilotcs::Result<()> {
    let candidates = [
        ("FZC M=255", fzc_family(255)?),
        ("Gold s=5", gold_family_default(5)?),
        ("Kasami s=4", kasami_family(4)?),
    ];
    for (name, family) in candidates {
        let op = MeasurementOperator::new(family.sequences()[..2].to_vec())?;
        let k = op.rows() / 8;
        let report = op.analyze(k, 1.0, LogBase::Natural)?;
        println!("== {name} (q=2, K={k})\n{report}");
        let v = report.violations(1e-9);
        println!("bounds hold: {}\n", v.is_empty());
    }
    Ok(())
}
