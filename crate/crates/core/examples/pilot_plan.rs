//! Assigns cyclically shifted pilots to transmitters and checks that the
//! pilot-built measurement matrix is a concatenation of full circulants.

use pilotcs::operator::{dense, MeasurementOperator};
use pilotcs::pilot::assign_pilots;
use pilotcs::seqgen::fzc_family;

fn main() -> pilotcs::Result<()> {
    let (m, l, t) = (255, 51, 10);
    let family = fzc_family(m as u64)?;
    let plan = assign_pilots(&family, t, m, l)?;
    println!(
        "M={m} L={l} t={t}: q={} base sequences, N={}",
        plan.q(),
        plan.n()
    );
    println!("{:>11} {:>5} {:>6}", "transmitter", "base", "shift");
    for a in plan.assignments() {
        println!("{:>11} {:>5} {:>6}", a.transmitter, a.base, a.shift);
    }

    let from_pilots = dense::from_pilots(&plan);
    let op = MeasurementOperator::from_plan(&plan)?;
    let same = from_pilots == op.materialize()?;
    println!("pilot-built matrix equals [C(b_1) C(b_2)]: {same}");

    textio_demo(&plan)?;
    Ok(())
}

fn textio_demo(plan: &pilotcs::pilot::PilotPlan) -> pilotcs::Result<()> {
    let mut buf = Vec::new();
    pilotcs::textio::write_plan(&mut buf, plan)?;
    println!("\nplan manifest:\n{}", String::from_utf8_lossy(&buf));
    Ok(())
}
