// Affine institutions, their morphisms, and the elementary institution
// they induce.

use afsys::catalog;
use afsys::institution::{
    check_affine_inst_morphism, check_affine_institution, check_elementary,
    compose_affine_inst_morphisms, geo,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ai = catalog::afinst();
    assert!(check_affine_institution(&ai)?.passed());

    let g = geo(&ai)?;
    println!("geo signature category: {}", g.sign());
    println!(
        "satisfaction condition holds: {}",
        check_elementary(&g).passed()
    );

    let collapse = catalog::afinst_endomorphism();
    assert!(check_affine_inst_morphism(&collapse)?.passed());
    let twice = compose_affine_inst_morphisms(&collapse, &collapse)?;
    println!(
        "collapse is idempotent: {}",
        twice.components() == collapse.components()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
