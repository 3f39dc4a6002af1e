// Minimal trace of A P over permutations, by the Hungarian method and by
// enumeration.

use birkhoff::{min_trace_bruteforce, min_trace_hungarian, SquareMatrix};

pub fn run_example() -> birkhoff::Result<()> {
    let a = SquareMatrix::from_rows(&[[4.0, 1.0, 3.0], [2.0, 0.0, 5.0], [3.0, 2.0, 2.0]])?;

    let fast = min_trace_hungarian(&a);
    let slow = min_trace_bruteforce(&a)?;
    println!(
        "hungarian:  {} via row -> column {:?}",
        fast.value, fast.assignment
    );
    println!(
        "bruteforce: {} via row -> column {:?}",
        slow.value, slow.assignment
    );

    // the argmin permutation matrix P attains the value as tr(A P)
    let t = fast.argmin.trace_product(&a)?;
    println!("tr(A P*) = {t}");
    assert_eq!(fast.value, slow.value);
    Ok(())
}

#[allow(dead_code)]
fn main() -> birkhoff::Result<()> {
    run_example()
}
