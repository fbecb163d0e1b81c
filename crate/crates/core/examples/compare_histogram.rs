// Empirical gaps at radius R against the limiting law.

use golden_gaps::bcz::{gaps_via_bcz, Mode};
use golden_gaps::stats;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sample = gaps_via_bcz(300, Mode::Float)?;
    let report = stats::compare(&sample, 16, 8.0)?;
    println!(
        "R = {}: {} gaps, min {:.6}, mean {:.5}, KS {:.4}",
        report.radius, report.n_gaps, report.min_gap, report.mean_gap, report.ks
    );
    for row in &report.rows {
        let bar = "#".repeat((row.density * 120.0) as usize);
        println!(
            "[{:>4.1},{:>4.1}) {:.4} {:.4} {bar}",
            row.bin_left, row.bin_right, row.density, row.analytic_pdf_at_midpoint
        );
    }
    let slopes = golden_gaps::lattice::slopes(300);
    println!("slope equidistribution KS: {:.5}", stats::uniformity_test(&slopes)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
