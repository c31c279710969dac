use super::hom::{HomSearch, Homomorphism};
use super::FiniteAlgebra;
use crate::error::Result;

/// Backtracking search for an isomorphism `a → b`; the lexicographically
/// least one is returned.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<Homomorphism>> {
    a.signature().ensure_same(b.signature())?;
    if a.size() != b.size() {
        return Ok(None);
    }
    let mut found = None;
    HomSearch::new(a, b, true).run(&mut |map| {
        found = Some(map.to_vec());
        false
    });
    // A bijective homomorphism between algebras has a homomorphic inverse.
    Ok(found.map(|map| Homomorphism::new_unchecked(a.clone(), b.clone(), map)))
}

/// Every isomorphism `a → b`, in lexicographic order of the maps.
pub fn all_isomorphisms(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Vec<Homomorphism>> {
    a.signature().ensure_same(b.signature())?;
    if a.size() != b.size() {
        return Ok(Vec::new());
    }
    let mut found = Vec::new();
    HomSearch::new(a, b, true).run(&mut |map| {
        found.push(Homomorphism::new_unchecked(
            a.clone(),
            b.clone(),
            map.to_vec(),
        ));
        true
    });
    Ok(found)
}

pub fn isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn diamond_automorphisms() {
        let d = catalog::diamond_frame();
        let autos = all_isomorphisms(&d, &d).unwrap();
        assert_eq!(
            autos.iter().map(|h| h.map().to_vec()).collect::<Vec<_>>(),
            vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]]
        );
    }

    #[test]
    fn diamond_is_not_a_chain() {
        assert!(!isomorphic(&catalog::diamond_frame(), &catalog::chain(4)).unwrap());
        assert!(isomorphic(&catalog::diamond_frame(), &catalog::diamond_frame()).unwrap());
    }

    #[test]
    fn relabelled_copy_is_isomorphic() {
        let c = catalog::chain3();
        let r = c.relabel(vec!["x".into(), "y".into(), "z".into()]).unwrap();
        let iso = find_isomorphism(&c, &r).unwrap().unwrap();
        assert_eq!(iso.map(), &[0, 1, 2]);
    }
}
