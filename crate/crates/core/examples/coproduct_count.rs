// The cardinality count behind the failure of coproduct preservation.

use afsys::functor::prop3_demo;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=4 {
        let p = prop3_demo(n)?;
        println!("n = {n}: {} vs {} (equal: {})", p.lhs, p.rhs, p.equal);
    }
    let p = prop3_demo(2)?;
    assert_eq!((p.lhs, p.rhs, p.equal), (16, 4, false));
    assert!(prop3_demo(0).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
