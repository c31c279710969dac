// Morphisms of elementary institutions, and rejection of comorphism data.

use afsys::cat::FiniteFunctor;
use afsys::catalog;
use afsys::institution::{check_inst_morphism, Direction, InstitutionMorphism};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (inst2, inst1) = (catalog::inst2(), catalog::inst1());
    // Both signatures of INST2 go to S; phi goes to the identity.
    let phi = FiniteFunctor::from_names(
        inst2.sign().clone(),
        inst1.sign().clone(),
        &[("S1", "S"), ("S2", "S")],
        &[("phi", "id_S")],
        false,
    )?;
    let alpha = vec![vec![0, 1], vec![0, 1]];
    let beta = vec![vec![0, 1], vec![0, 1, 1]];
    let mu = InstitutionMorphism::new(
        inst2.clone(),
        inst1.clone(),
        phi.clone(),
        alpha,
        beta,
        Direction::Morphism,
    )?;
    println!(
        "INST2 -> INST1 is a morphism: {}",
        check_inst_morphism(&mu).passed()
    );
    assert!(check_inst_morphism(&mu).passed());

    let tagged = InstitutionMorphism::new(inst2, inst1, phi, vec![], vec![], Direction::Comorphism);
    println!("{}", tagged.unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
