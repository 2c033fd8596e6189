//! FZC families and their correlation profile.
//!
//! `cargo run --example fzc_family -- 255`

use pilotcs::correlation::{profile_naive, sarwate_bound, sarwate_lhs};
use pilotcs::seqgen::{fzc_family, fzc_family_roots, smallest_prime_divisor};

fn main() -> pilotcs::Result<()> {
    let m: u64 = std::env::args()
        .nth(1)
        .map_or(Ok(255), |a| a.parse())
        .expect("M must be an integer");

    let p = smallest_prime_divisor(m)?;
    let family = fzc_family(m)?;
    println!(
        "M = {m}, smallest prime divisor {p}, family size {}",
        family.len()
    );
    println!("roots u_i = i^-1 mod M: {:?}", fzc_family_roots(m)?);

    let profile = profile_naive(family.sequences())?;
    println!("theta_a = {:.3e}", profile.theta_a);
    if let Some(theta_c) = profile.theta_c {
        println!(
            "theta_c = {theta_c:.12} (1/sqrt(M) = {:.12})",
            (m as f64).sqrt().recip()
        );
        println!(
            "Sarwate: lhs {:.6e}, bound 1/M^2 = {:.6e}",
            sarwate_lhs(&profile)?,
            sarwate_bound(m as usize)
        );
    }

    let first = &family.sequences()[0];
    println!("first member, first 4 chips:");
    for z in &first.values()[..4] {
        println!("  {:+.6} {:+.6}j", z.re, z.im);
    }
    Ok(())
}
