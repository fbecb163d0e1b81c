// Exact arithmetic in Q(φ) and the Veech group generators.

use golden_gaps::golden::{GoldenMatrix, GoldenNumber};
use golden_gaps::lattice::veech_generators;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let phi = GoldenNumber::phi();
    println!("phi^2 = {}", &phi * &phi);
    println!("1/phi = {}", phi.inv()?);

    // F(30) - F(29)·φ is tiny and negative; the sign is decided exactly.
    let tiny = GoldenNumber::from_ints(832_040, -514_229);
    println!("{tiny} has sign {} (≈ {:e})", tiny.signum(), tiny.to_f64());

    let x: GoldenNumber = "3/4-1/2*phi".parse()?;
    println!("parsed {x}, norm {}, conjugate {}", x.norm(), x.conjugate());

    let gens = veech_generators();
    let (s, p) = (&gens[0], &gens[2]);
    let sp = s * p;
    let fifth = sp.pow(5);
    assert!(fifth == GoldenMatrix::identity() || fifth == GoldenMatrix::identity().neg());
    println!("(SP)^5 = ±I, det S = {}, det P = {}", s.det(), p.det());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
