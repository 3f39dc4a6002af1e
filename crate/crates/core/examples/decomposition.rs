// Birkhoff decomposition of a doubly stochastic matrix into permutations.

use birkhoff::birkhoff::sample_sinkhorn;
use birkhoff::{birkhoff_decompose, frobenius_norm, BirkhoffDecomposition};

pub fn run_example() -> birkhoff::Result<()> {
    let d = sample_sinkhorn(4, 5, 10_000, 1e-13)?;
    let dec = birkhoff_decompose(&d)?;
    for term in &dec.terms {
        println!("{:.6} x {:?}", term.weight, term.perm.sigma());
    }
    let err = frobenius_norm(&dec.reconstruct().sub(&d)?);
    println!(
        "{} terms (at most {}), weights sum to {:.15}, reconstruction error {err:.1e}",
        dec.len(),
        BirkhoffDecomposition::max_terms(4),
        dec.weight_sum()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> birkhoff::Result<()> {
    run_example()
}
