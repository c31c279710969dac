// The embedding of spaces into systems and spatialization back.

use afsys::catalog;
use afsys::functor::{counit_system, e_space, spat, verify_spatial_adjunction};
use afsys::topology::is_separated;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let space = catalog::sierpinski();
    let sys = e_space(&space);
    println!("E(Sierpinski) has algebra {:?}", sys.algebra().labels());
    assert_eq!(spat(&sys)?, space);

    // The counit is bijective exactly on separated systems.
    for s in [catalog::sys1(), catalog::sys2()] {
        let counit = counit_system(&s)?;
        println!(
            "separated: {}, counit bijective: {}",
            is_separated(&s),
            counit.is_iso()
        );
        assert_eq!(is_separated(&s), counit.is_iso());
    }

    let report = verify_spatial_adjunction(&[space], &[catalog::sys1(), catalog::sys2()])?;
    println!("triangle identities hold: {}", report.holds());
    assert!(report.holds());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
