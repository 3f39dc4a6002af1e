// Randomized search for a center that does better than J_n.

use birkhoff::{center_uniqueness_probe, SchattenExponent};

pub fn run_example() -> birkhoff::Result<()> {
    for p in [1.0, 2.0] {
        let rep = center_uniqueness_probe(4, SchattenExponent::new(p)?, 200, 11)?;
        println!(
            "p={p}: {} candidates, smallest margin {:.6}, {} falsifiers",
            rep.trials,
            rep.min_margin,
            rep.falsifiers.len()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> birkhoff::Result<()> {
    run_example()
}
