// Entailment closure, the lattice of theories, and the spatial completion.

use std::collections::BTreeSet;

use afsys::catalog;
use afsys::institution::{entailment_closure, spatial_completion, theory_lattice, theory_system};
use afsys::topology::find_system_isomorphism;
use afsys::Budget;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::default();
    let inst = catalog::inst1();
    let s2 = BTreeSet::from([1]);
    println!(
        "closure of {{s2}}: {:?}",
        entailment_closure(&inst, 0, &s2)?
    );

    let lattice = theory_lattice(&inst, 0, budget)?;
    println!("{} theories: {:?}", lattice.len(), lattice.theories);
    assert!(lattice.check_complete(&inst, budget)?.passed());

    let completion = spatial_completion(&inst, 0, budget)?;
    println!("completion algebra: {:?}", completion.algebra().labels());
    assert!(find_system_isomorphism(&completion, &catalog::sys1(), budget)?.is_some());

    // A join of theories that no single model forces.
    let gap = theory_system(&catalog::join_gap_institution(), 0, budget)?;
    for f in &gap.join_failures {
        println!(
            "join of theories {:?} is not respected at model {}",
            f.subset, gap.models[f.model]
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
