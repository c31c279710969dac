// Points of an algebra, the localic embedding, and its counit.

use afsys::catalog;
use afsys::functor::{counit_eps, e_loc, loc, pt};
use afsys::topology::AffineTheory;
use afsys::Budget;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::default();
    let theory = AffineTheory::two();
    let chain = catalog::chain3();

    let points = pt(&chain, &theory, budget)?;
    for p in &points {
        let up: Vec<&str> = (0..chain.size())
            .filter(|&a| p.apply(a) == 1)
            .map(|a| chain.label(a))
            .collect();
        println!("point with filter {up:?}");
    }
    assert_eq!(points.len(), 2);

    // eps(a)(p) = p(a)
    let eps = counit_eps(&chain, &theory, budget)?;
    for (a, row) in eps.iter().enumerate() {
        for (i, p) in points.iter().enumerate() {
            assert_eq!(row[i], p.apply(a));
        }
    }

    let sys = e_loc(&chain, &theory, budget)?;
    assert_eq!(loc(&sys), chain);
    println!("E_loc(3-chain) has points {:?}", sys.points());

    // The one-element frame has no points at all.
    assert!(pt(&catalog::trivial_frame(), &theory, budget)?.is_empty());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
