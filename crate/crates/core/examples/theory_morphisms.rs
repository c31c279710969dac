// Changing the base along a theory morphism, on systems and morphisms.

use std::collections::BTreeMap;

use afsys::algebra::{Homomorphism, Variety};
use afsys::catalog;
use afsys::functor::{afsys_apply, theory_compose, TheoryMorphism};
use afsys::topology::{is_system, AffineSystem, AffineTheory};
use afsys::Budget;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let two = AffineTheory::two();
    let c3 = AffineTheory::new(catalog::chain3(), Variety::Frame)?;
    let include = TheoryMorphism::new(two.clone(), c3.clone(), vec![0, 2], BTreeMap::new())?;
    let rename = BTreeMap::from([("p".to_string(), "u".to_string())]);
    let collapse = TheoryMorphism::new(c3.clone(), two.clone(), vec![0, 1, 1], rename)?;

    let moved = afsys_apply(&include, &catalog::sys1())?;
    println!("SYS1 over the 3-chain: {:?}", moved.ext());
    assert!(is_system(&moved).passed());

    let round = theory_compose(&collapse, &include)?;
    println!("collapse after include has base map {:?}", round.h().map());
    assert_eq!(round.h(), &Homomorphism::identity(two.base()));
    let back = afsys_apply(&round, &catalog::sys1())?;
    assert_eq!(back.points(), ["u", "q"]);
    assert_eq!(afsys_apply(&collapse, &moved)?, back);

    let squares = collapse
        .check_naturality(2, Budget::default())?
        .expect("eta is natural");
    println!("naturality squares checked: {squares}");

    let chain = AffineSystem::new(
        c3,
        vec!["p".into(), "q".into()],
        catalog::chain3(),
        vec![vec![0, 0], vec![1, 2], vec![2, 2]],
    )?;
    println!(
        "chain system over 2: {:?}",
        afsys_apply(&collapse, &chain)?.ext()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
