// Saddle connection holonomies in the sector and the slope set at radius R.

use golden_gaps::lattice::{enumerate_lattice_bfs, enumerate_vectors_by_descent, slopes, BFS_PRUNING_FACTOR};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let r = 4;
    let vectors = enumerate_vectors_by_descent(r);
    println!("{} vectors with 0 ≤ Im ≤ Re ≤ {r}:", vectors.len());
    for v in &vectors {
        println!("  {:>28}  slope {:.6}", v.to_golden().to_string(), v.slope().to_f64());
    }

    // the group BFS finds the same set
    assert_eq!(enumerate_lattice_bfs(r, BFS_PRUNING_FACTOR), vectors);

    for r in [10, 100, 1000] {
        println!("N({r}) = {}", slopes(r).count());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
