// The BCZ map: zones, return times, and the orbit that reads off slope gaps.

use golden_gaps::bcz::{self, Mode, SectionPoint};
use golden_gaps::golden::GoldenNumber;
use golden_gaps::lattice::gaps_direct;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = SectionPoint::exact(GoldenNumber::phi_bar(), "1/10".parse()?);
    println!(
        "zone {} and return time {:.6} at (φ̄, 1/10)",
        bcz::classify(&p)?,
        bcz::return_time(&p)?
    );

    let trace = bcz::orbit(&p, 6)?;
    for (i, (z, t)) in trace.zones.iter().zip(&trace.return_times).enumerate() {
        println!("  T^{i}: {z:>4}  R = {t:.6}");
    }

    // Starting from x_R, return times are the scaled gaps in slope order.
    let r = 10;
    let via = bcz::gaps_via_bcz(r, Mode::Exact)?;
    let direct = gaps_direct(r);
    assert_eq!(via.exact, direct.exact);
    println!("R = {r}: {} gaps, first five {:?}", via.len(), &via.gaps[..5]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
