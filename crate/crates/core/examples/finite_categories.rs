// Finite categories, functors and natural transformations.

use afsys::cat::{
    check_category, check_functor, check_nat_trans, FiniteCategory, FiniteFunctor, FiniteNatTrans,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // The commuting triangle A -> B -> C.
    let tri = FiniteCategory::new(
        &["A", "B", "C"],
        &[("f", "A", "B"), ("g", "B", "C"), ("h", "A", "C")],
        &[("g", "f", "h")],
    )?;
    println!("{tri}");
    assert!(check_category(&tri).passed());

    let chain = FiniteCategory::preorder(3, |i, j| i <= j);
    let iso = FiniteFunctor::from_names(
        tri.clone(),
        chain.clone(),
        &[("A", "0"), ("B", "1"), ("C", "2")],
        &[("f", "0<=1"), ("g", "1<=2"), ("h", "0<=2")],
        false,
    )?;
    assert!(check_functor(&iso).passed());

    // A composite declared with the wrong endpoints is rejected.
    let bad = FiniteCategory::new(&["A", "B"], &[("f", "A", "B")], &[("f", "f", "f")]);
    println!("misdirected composite: {}", bad.unwrap_err());

    let id = FiniteNatTrans::identity(&iso);
    assert!(check_nat_trans(&id).passed());
    println!(
        "opposite of the chain has {} arrows",
        chain.opposite().arrow_count()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
