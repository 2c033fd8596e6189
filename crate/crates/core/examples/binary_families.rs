//! m-sequences, Gold and small-set Kasami families from LFSRs.

use pilotcs::correlation::{profile_naive, welch_bound};
use pilotcs::seqgen::{gold_family_default, kasami_family, m_sequence_bits, LfsrSpec};

fn main() -> pilotcs::Result<()> {
    let spec = LfsrSpec::primitive(5)?;
    let bits = m_sequence_bits(&spec)?;
    let ones = bits.iter().filter(|&&b| b == 1).count();
    println!(
        "m-sequence, taps {:?}: period {}, {ones} ones",
        spec.taps(),
        bits.len()
    );
    println!(
        "  {}",
        bits.iter()
            .map(|b| char::from(b'0' + b))
            .collect::<String>()
    );

    for s in [5, 7] {
        let gold = gold_family_default(s)?;
        let p = profile_naive(gold.sequences())?;
        let m = gold.period();
        println!(
            "Gold s={s}: {} sequences of period {m}, max correlation {:.4} ({} / M)",
            gold.len(),
            p.max_correlation(),
            (p.max_correlation() * m as f64).round()
        );
    }

    for s in [4, 6, 8] {
        let kasami = kasami_family(s)?;
        let p = profile_naive(kasami.sequences())?;
        let m = kasami.period();
        let welch = welch_bound(m, m * kasami.len())?;
        println!(
            "Kasami s={s}: {} sequences of period {m}, max correlation {:.4}, Welch bound for the full operator {:.4}",
            kasami.len(),
            p.max_correlation(),
            welch
        );
    }
    Ok(())
}
