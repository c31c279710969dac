// Affine systems: extents, separation, and the topological-system axioms.

use afsys::catalog;
use afsys::topology::{is_separated, is_system, separation_witness, vickers_axiom_check};
use afsys::Budget;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sys1 = catalog::sys1();
    for a in 0..sys1.algebra().size() {
        println!(
            "ext({}) = {}",
            sys1.algebra().label(a),
            sys1.theory().tuple_label(sys1.extent(a))
        );
    }
    assert!(is_system(&sys1).passed());
    assert!(is_separated(&sys1));
    let axioms = vickers_axiom_check(&sys1, None, Budget::default())?;
    println!(
        "SYS1: {} subsets checked, axioms hold: {}",
        axioms.subsets_checked,
        axioms.passed()
    );

    let sys2 = catalog::sys2();
    let (a, b) = separation_witness(&sys2).expect("SYS2 is not separated");
    println!(
        "SYS2 identifies {} and {}",
        sys2.algebra().label(a),
        sys2.algebra().label(b)
    );
    assert!(is_system(&sys2).passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
