// Chebyshev radius of the polytope, checked against enumeration and the
// norm along the line through I and J.

use birkhoff::geometry::Search;
use birkhoff::{
    alpha_line_norm, bounding_ball_radius_enum, chebyshev_radius, equidistance_check, jn,
    SchattenExponent,
};

pub fn run_example() -> birkhoff::Result<()> {
    for n in [3, 4, 5] {
        for p in [1.0, 2.0, 3.0] {
            let e = SchattenExponent::new(p)?;
            let cheb = chebyshev_radius(n, e)?;
            let brute = bounding_ball_radius_enum(&jn(n), e, Search::Exhaustive)?;
            let eq = equidistance_check(&jn(n), e, 1e-10, Search::Exhaustive)?;
            println!(
                "n={n} p={p}: radius {:.10} (enumerated {:.10}, spread {:.1e})",
                cheb.radius, brute.radius, eq.max_dev
            );
        }
    }

    let e = SchattenExponent::new(1.5)?;
    for alpha in [-1.0, 0.0, 0.5, 1.0, 1.5, 3.0] {
        println!(
            "|{alpha} J_4 - I|_1.5 = {:.6}",
            alpha_line_norm(alpha, 4, e)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> birkhoff::Result<()> {
    run_example()
}
