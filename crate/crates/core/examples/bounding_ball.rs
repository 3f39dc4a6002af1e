// Smallest ball centered at a doubly stochastic matrix that contains every
// permutation matrix.

use birkhoff::birkhoff::sample_convex;
use birkhoff::geometry::Search;
use birkhoff::{
    bounding_ball_radius_enum, bounding_ball_radius_s2, frobenius_norm, radius_bounds_s2,
    SchattenExponent,
};

pub fn run_example() -> birkhoff::Result<()> {
    let d = sample_convex(5, 3, 42)?;
    let closed = bounding_ball_radius_s2(&d);
    let brute = bounding_ball_radius_enum(&d, SchattenExponent::TWO, Search::Exhaustive)?;
    println!("closed form: {:.12}", closed.radius);
    println!(
        "enumeration: {:.12} over {} permutations",
        brute.radius, brute.permutations_checked
    );
    println!("farthest permutation: {:?}", closed.witness.sigma());

    let b = radius_bounds_s2(&d);
    println!(
        "|D|_F = {:.6}, bounds [{:.6}, {:.6}]",
        frobenius_norm(&d),
        b.lo,
        b.hi
    );

    let p1 = bounding_ball_radius_enum(&d, SchattenExponent::ONE, Search::Exhaustive)?;
    println!("trace-norm radius: {:.12}", p1.radius);
    Ok(())
}

#[allow(dead_code)]
fn main() -> birkhoff::Result<()> {
    run_example()
}
