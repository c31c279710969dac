// Affine spaces over the two-element frame, their morphisms, and the
// initial and final lifts of structured families.

use std::collections::BTreeSet;

use afsys::catalog;
use afsys::topology::{
    final_lift, initial_lift, is_space, is_space_morphism, AffineSpace, AffineTheory,
};
use afsys::Budget;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::default();
    let theory = AffineTheory::two();
    let sierpinski = catalog::sierpinski();
    for open in sierpinski.opens() {
        println!("open {}", theory.tuple_label(open));
    }

    let not_closed: BTreeSet<Vec<usize>> =
        [vec![0, 0], vec![0, 1], vec![1, 0]].into_iter().collect();
    let verdict = is_space(&theory, 2, &not_closed)?;
    let missing = &verdict.witness().expect("join is missing").result;
    println!("not a space: {} is missing", theory.tuple_label(missing));

    // Swapping the points is not continuous for the Sierpinski space.
    let swap = [1, 0];
    assert!(!is_space_morphism(&swap, &sierpinski, &sierpinski)?.passed());

    // The coarsest structure on three points making the map to p continuous.
    let points: Vec<String> = ["a", "b", "c"].map(String::from).to_vec();
    let init = initial_lift(
        &theory,
        points.clone(),
        &[(vec![0, 0, 1], &sierpinski)],
        budget,
    )?;
    println!("initial lift has {} opens", init.opens().len());
    assert_eq!(init.opens().len(), 3);

    // The finest structure on three points making a map from Sierpinski continuous.
    let fin = final_lift(&theory, points, &[(vec![0, 2], &sierpinski)], budget)?;
    println!("final lift has {} opens", fin.opens().len());
    let discrete = AffineSpace::discrete(theory, vec!["x".into(), "y".into()], budget)?;
    assert_eq!(discrete.opens().len(), 4);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
