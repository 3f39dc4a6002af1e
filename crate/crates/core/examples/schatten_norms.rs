// Schatten norms of a few structured matrices.

use birkhoff::{
    jn, schatten_norm, singular_values, PermutationMatrix, SchattenExponent, SquareMatrix,
};

pub fn run_example() -> birkhoff::Result<()> {
    let n = 4;
    let j = jn(n);
    let p = PermutationMatrix::cycle(n).to_dense();
    let d = SquareMatrix::identity(n).scale(0.5).add(&j.scale(0.5))?;

    for exp in [1.0, 1.5, 2.0, 3.0] {
        let e = SchattenExponent::new(exp)?;
        println!(
            "p = {exp}: |J| = {:.6}  |P| = {:.6}  |I/2 + J/2| = {:.6}",
            schatten_norm(&j, e)?,
            schatten_norm(&p, e)?,
            schatten_norm(&d, e)?,
        );
    }

    let s = singular_values(&d)?;
    println!("singular values of I/2 + J/2: {:?}", s.values());
    Ok(())
}

#[allow(dead_code)]
fn main() -> birkhoff::Result<()> {
    run_example()
}
