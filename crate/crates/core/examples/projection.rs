// Nearest matrix with unit row and column sums, and the average over all
// permutations.

use birkhoff::birkhoff::khoury_distance;
use birkhoff::{average_all_permutations, jn, khoury_projection, SquareMatrix};

pub fn run_example() -> birkhoff::Result<()> {
    let b = SquareMatrix::from_rows(&[[2.0, -1.0, 0.5], [0.0, 1.0, 1.0], [3.0, 0.0, -2.0]])?;
    let g = khoury_projection(&b);
    for i in 0..3 {
        println!(
            "row {i}: {:?} (row sum {:.3}, col sum {:.3})",
            g.row(i),
            g.row_sum(i),
            g.col_sum(i)
        );
    }
    println!("distance to the affine hull: {:.6}", khoury_distance(&b));

    let avg = average_all_permutations(5)?;
    println!(
        "mean of all 5x5 permutation matrices differs from J_5 by {:.1e}",
        avg.max_abs_diff(&jn(5))?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> birkhoff::Result<()> {
    run_example()
}
