// Enumerating homomorphisms and isomorphisms between finite algebras.

use afsys::algebra::{all_isomorphisms, enumerate_homs, isomorphic};
use afsys::{catalog, Budget};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::default();
    let diamond = catalog::diamond_frame();
    let two = catalog::two();

    let homs = enumerate_homs(&diamond, &two, budget)?;
    for h in &homs {
        let image: Vec<&str> = (0..diamond.size()).map(|a| two.label(h.apply(a))).collect();
        println!("diamond -> 2: {image:?}");
    }
    assert_eq!(homs.len(), 2);

    let autos = all_isomorphisms(&diamond, &diamond)?;
    println!("diamond has {} automorphisms", autos.len());
    assert_eq!(autos.len(), 2);
    assert!(!isomorphic(&diamond, &catalog::chain(4))?);

    // The budget bounds the candidate space up front.
    let tight = enumerate_homs(&catalog::m3(), &catalog::chain(4), Budget(10));
    println!("with a budget of 10: {}", tight.unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
