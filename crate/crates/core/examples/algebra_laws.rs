// Checking a finite algebra against the laws of a variety.

use afsys::algebra::{check_laws, Variety};
use afsys::catalog;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let chain = catalog::chain3();
    let report = check_laws(&chain, Variety::Frame)?;
    println!("3-chain is a frame: {}", report.passed());
    assert!(report.passed());

    // Declaring m to be its own complement breaks the Boolean laws.
    let fake = catalog::chain3_fake_complement();
    let report = check_laws(&fake, Variety::CompleteBooleanAlgebra)?;
    for (law, outcome) in &report.results {
        if let Some(w) = outcome.witness() {
            let labels: Vec<&str> = w.assignment.iter().map(|&a| fake.label(a)).collect();
            println!("{law} fails at {labels:?}");
        }
    }
    let first = report.first_failure().expect("a failing law");
    assert_eq!(fake.label(first.assignment[0]), "m");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
