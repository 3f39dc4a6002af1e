// Seeded samplers for doubly stochastic matrices.

use birkhoff::birkhoff::{sample_convex, sample_sinkhorn};
use birkhoff::io::{format_matrix, MatrixFormat};
use birkhoff::min_trace_hungarian;

pub fn run_example() -> birkhoff::Result<()> {
    let a = sample_convex(3, 4, 2024)?;
    let b = sample_sinkhorn(3, 2024, 10_000, 1e-13)?;
    print!("convex mixture:\n{}", format_matrix(&a, MatrixFormat::Csv));
    print!("sinkhorn:\n{}", format_matrix(&b, MatrixFormat::Json));
    println!(
        "tr_min: {:.6} and {:.6}",
        min_trace_hungarian(&a).value,
        min_trace_hungarian(&b).value
    );
    assert_eq!(a, sample_convex(3, 4, 2024)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> birkhoff::Result<()> {
    run_example()
}
