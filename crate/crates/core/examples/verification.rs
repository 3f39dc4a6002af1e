// Runs the randomized invariant suites and prints one line per case.

use birkhoff::verify::{run_suite, Status, Suite};

pub fn run_example() -> birkhoff::Result<()> {
    let report = run_suite(Suite::All, 7, 20);
    for case in &report.per_case {
        let mark = if case.status == Status::Pass {
            "ok  "
        } else {
            "FAIL"
        };
        println!("{mark} {:<36} {}", case.name, case.detail);
    }
    println!(
        "{} of {} cases failed",
        report.cases_failed, report.cases_run
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> birkhoff::Result<()> {
    run_example()
}
