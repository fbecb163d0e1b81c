// The limiting gap density and distribution, and where the density has corners.

use golden_gaps::analytic::{self, gap_cdf, gap_pdf, gap_survival};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>8} {:>12} {:>12}", "alpha", "pdf", "cdf");
    for a in [0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 7.0, 10.0, 20.0] {
        println!("{a:>8} {:>12.8} {:>12.8}", gap_pdf(a), gap_cdf(a));
    }

    println!("breakpoint        alpha  differentiable");
    for b in analytic::smoothness_report() {
        println!("{:>14} {:>10.6}  {}", b.exact, b.alpha, b.differentiable);
    }

    for t in [1e3, 1e5] {
        println!("t²·(1 − F(t)) at t = {t:e}: {:.6}", t * t * gap_survival(t));
    }
    let grid = analytic::AlphaGrid::new(0.0, 8.0, 5)?;
    analytic::write_curve_csv(std::io::stdout(), &analytic::curve(&grid.points()))?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
