// Joint law of consecutive gaps by Monte Carlo over the section.

use golden_gaps::analytic::gap_cdf;
use golden_gaps::stats::{h_spacing_mc, HSpacingQuery};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for t in [1.0, 2.0, 5.0] {
        let r = h_spacing_mc(&HSpacingQuery::new(vec![t], 50_000, 7))?;
        println!(
            "P(R ≥ {t}) ≈ {:.4} ± {:.4}   limit law {:.4}",
            r.estimate,
            r.std_error,
            1.0 - gap_cdf(t)
        );
    }
    let pair = h_spacing_mc(&HSpacingQuery::new(vec![2.0, 2.0], 50_000, 7))?;
    let single = 1.0 - gap_cdf(2.0);
    println!(
        "P(R ≥ 2, R∘T ≥ 2) ≈ {:.4} ± {:.4}   (independent would be {:.4})",
        pair.estimate,
        pair.std_error,
        single * single
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
