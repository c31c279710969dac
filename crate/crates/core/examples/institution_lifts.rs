// Lifting affine institutions between spaces, systems and algebras.

use afsys::catalog;
use afsys::institution::{
    ie_lift, ie_loc_lift, iloc_lift, ispat_lift, loc_reflection_components,
    spatial_counit_components, spatial_unit_components,
};
use afsys::Budget;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::default();
    let si = catalog::spatial_afinst();
    let lifted = ie_lift(&si)?;
    assert_eq!(ispat_lift(&lifted)?, si);
    println!("spatializing the embedded institution gives it back");

    let li = iloc_lift(&catalog::afinst())?;
    assert_eq!(iloc_lift(&ie_loc_lift(&li, budget)?)?, li);
    println!("localifying the localic embedding gives it back");

    println!(
        "unit natural: {}",
        spatial_unit_components(&si)?.naturality.passed()
    );
    println!(
        "counit natural: {}",
        spatial_counit_components(&catalog::afinst())?
            .naturality
            .passed()
    );
    println!(
        "reflection natural: {}",
        loc_reflection_components(&catalog::afinst(), budget)?
            .naturality
            .passed()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
