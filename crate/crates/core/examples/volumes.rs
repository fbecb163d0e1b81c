// Partial volumes from the dilogarithm against direct quadrature.

use golden_gaps::analytic;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let phi_bar = golden_gaps::golden::PHI_BAR;
    let d = analytic::dilog(phi_bar)? - analytic::dilog(phi_bar * phi_bar)?;
    println!(
        "Li2(φ̄) − Li2(φ̄²) = {d:.15} (π²/30 = {:.15})",
        std::f64::consts::PI.powi(2) / 30.0
    );

    let report = analytic::volumes();
    report.write_json(std::io::stdout())?;
    println!();
    println!("mean scaled gap 3π²/(5φ) = {:.6}", analytic::kac_mean());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
