use crate::algebra::{all_tuples, FiniteAlgebra};
use crate::budget::{power, Budget};
use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::topology::{
    is_space_morphism, is_system_morphism, pull_back, AffineSpace, AffineSystem, SystemMorphism,
};

use super::UniversalReport;

/// The opens of a space as an algebra: element `i` is the `i`-th open in
/// ascending order, operations pointwise.
pub fn space_algebra(space: &AffineSpace) -> FiniteAlgebra {
    let opens = space.open_list();
    let th = space.theory();
    let fns = th.functions(space.point_count());
    let labels = opens.iter().map(|t| th.tuple_label(t)).collect();
    let sig = th.signature().clone();
    FiniteAlgebra::from_fn(labels, &sig, |s, args| {
        let idx = sig.index_of(&s.name).expect("same signature");
        let vals: Vec<&[usize]> = args.iter().map(|&a| opens[a].as_slice()).collect();
        opens
            .binary_search(&fns.apply(idx, &vals))
            .expect("opens are closed")
    })
    .expect("closed set of opens")
}

/// The embedding of spaces into systems: the algebra is the set of opens and
/// the extent map is the inclusion.
pub fn e_space(space: &AffineSpace) -> AffineSystem {
    AffineSystem::from_parts(
        space.theory().clone(),
        space.points().to_vec(),
        space_algebra(space),
        space.open_list(),
    )
    .expect("inclusion of opens is a system")
}

/// `E` on a space morphism `f`; the algebra component is `α ↦ α ∘ f`.
pub fn e_space_morphism(
    f: &[usize],
    source: &AffineSpace,
    target: &AffineSpace,
) -> Result<SystemMorphism> {
    if let Outcome::Fail(alpha) = is_space_morphism(f, source, target)? {
        return Err(Error::MalformedMap(format!(
            "not a space morphism: open {} pulls back outside the source",
            target.theory().tuple_label(&alpha)
        )));
    }
    let src_opens = source.open_list();
    let algebra_map = target
        .open_list()
        .iter()
        .map(|alpha| {
            src_opens
                .binary_search(&pull_back(alpha, f))
                .expect("checked above")
        })
        .collect();
    SystemMorphism::from_parts(e_space(source), e_space(target), f.to_vec(), algebra_map)
}

/// Spatialization: same points, opens the image of the extent map.
pub fn spat(sys: &AffineSystem) -> Result<AffineSpace> {
    AffineSpace::new(
        sys.theory().clone(),
        sys.points().to_vec(),
        sys.ext().iter().cloned(),
    )
}

/// `Spat` on a morphism is its point map.
pub fn spat_morphism(m: &SystemMorphism) -> Vec<usize> {
    m.point_map().to_vec()
}

/// The unit `S → Spat(E(S))`; the identity map of points.
pub fn spat_unit(space: &AffineSpace) -> Vec<usize> {
    (0..space.point_count()).collect()
}

/// The co-universal arrow `E(Spat(sys)) → sys`: identity on points, and
/// op-side the corestriction of `ext` onto its image.
pub fn counit_system(sys: &AffineSystem) -> Result<SystemMorphism> {
    let space = spat(sys)?;
    let opens = space.open_list();
    let algebra_map = sys
        .ext()
        .iter()
        .map(|t| opens.binary_search(t).expect("image element"))
        .collect();
    SystemMorphism::from_parts(
        e_space(&space),
        sys.clone(),
        (0..sys.point_count()).collect(),
        algebra_map,
    )
}

/// For every test morphism `E(S') → sys`, counts the space morphisms
/// `g : S' → Spat(sys)` with `counit ∘ E(g)` equal to it.
pub fn verify_couniversal(
    sys: &AffineSystem,
    tests: &[SystemMorphism],
    budget: Budget,
) -> Result<UniversalReport> {
    if tests.is_empty() {
        return Err(Error::Vacuous(
            "co-universality needs at least one test morphism".into(),
        ));
    }
    let counit = counit_system(sys)?;
    let spatial = spat(sys)?;
    let mut factorizations = Vec::with_capacity(tests.len());
    let mut candidates_checked = 0;
    for (i, test) in tests.iter().enumerate() {
        if test.target() != sys {
            return Err(Error::Malformed(format!(
                "test morphism {i} does not end at the system"
            )));
        }
        let source_space = spat(test.source())?;
        if &e_space(&source_space) != test.source() {
            return Err(Error::Malformed(format!(
                "test morphism {i} does not start at an embedded space"
            )));
        }
        if !is_system_morphism(test)?.passed() {
            return Err(Error::Malformed(format!(
                "test morphism {i} is not a system morphism"
            )));
        }
        let (n, m) = (source_space.point_count(), spatial.point_count());
        budget.check("candidate point maps", power(m, n))?;
        let mut count = 0;
        for g in all_tuples(m, n) {
            candidates_checked += 1;
            if !is_space_morphism(&g, &source_space, &spatial)?.passed() {
                continue;
            }
            let eg = e_space_morphism(&g, &source_space, &spatial)?;
            if &counit.after(&eg)? == test {
                count += 1;
            }
        }
        factorizations.push(count);
    }
    Ok(UniversalReport {
        family_size: tests.len(),
        factorizations,
        candidates_checked,
    })
}

/// Triangle identities of `E ⊣ Spat` over a family of spaces and systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpatialAdjunction {
    /// Unit components `S → Spat(E(S))`, one per space.
    pub units: Vec<Vec<usize>>,
    /// Counit components `E(Spat(sys)) → sys`, one per system.
    pub counits: Vec<SystemMorphism>,
    /// `ε_{E S} ∘ E(η_S) = 1_{E S}` per space.
    pub space_triangles: Vec<bool>,
    /// `Spat(ε_sys) ∘ η_{Spat sys} = 1_{Spat sys}` per system.
    pub system_triangles: Vec<bool>,
}

impl SpatialAdjunction {
    pub fn holds(&self) -> bool {
        self.space_triangles
            .iter()
            .chain(&self.system_triangles)
            .all(|&b| b)
    }
}

pub fn verify_spatial_adjunction(
    spaces: &[AffineSpace],
    systems: &[AffineSystem],
) -> Result<SpatialAdjunction> {
    if spaces.is_empty() && systems.is_empty() {
        return Err(Error::Vacuous(
            "adjunction check needs a non-empty family".into(),
        ));
    }
    let mut units = Vec::new();
    let mut space_triangles = Vec::new();
    for s in spaces {
        let eta = spat_unit(s);
        let round = spat(&e_space(s))?;
        let e_eta = e_space_morphism(&eta, s, &round)?;
        let eps = counit_system(&e_space(s))?;
        space_triangles.push(eps.after(&e_eta)? == SystemMorphism::identity(&e_space(s)));
        units.push(eta);
    }
    let mut counits = Vec::new();
    let mut system_triangles = Vec::new();
    for sys in systems {
        let eps = counit_system(sys)?;
        let spatial = spat(sys)?;
        let eta = spat_unit(&spatial);
        let spat_eps = spat_morphism(&eps);
        let composite: Vec<usize> = eta.iter().map(|&x| spat_eps[x]).collect();
        // the composite must also be a morphism Spat(sys) → Spat(sys)
        let ok = composite == spat_unit(&spatial)
            && spat(eps.source())? == spatial
            && is_space_morphism(&composite, &spatial, &spatial)?.passed();
        system_triangles.push(ok);
        counits.push(eps);
    }
    Ok(SpatialAdjunction {
        units,
        counits,
        space_triangles,
        system_triangles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::isomorphic;
    use crate::catalog;
    use crate::topology::{is_separated, is_system, AffineTheory};

    #[test]
    fn sierpinski_embeds_as_sys1() {
        let sys = e_space(&catalog::sierpinski());
        assert!(is_system(&sys).passed());
        assert!(is_separated(&sys));
        assert_eq!(sys.ext(), catalog::sys1().ext());
        assert!(isomorphic(sys.algebra(), catalog::sys1().algebra()).unwrap());
    }

    #[test]
    fn discrete_point_embeds_with_algebra_two() {
        let s = AffineSpace::discrete(AffineTheory::two(), vec!["*".into()], Budget::default())
            .unwrap();
        let sys = e_space(&s);
        assert_eq!(sys.algebra().size(), 2);
        assert!(isomorphic(sys.algebra(), &catalog::two()).unwrap());
    }

    #[test]
    fn spat_examples() {
        let s2 = spat(&catalog::sys2()).unwrap();
        assert_eq!(s2.open_list(), vec![vec![0], vec![1]]);
        assert_eq!(spat(&catalog::sys1()).unwrap(), catalog::sierpinski());
        let s = catalog::sierpinski();
        assert_eq!(spat(&e_space(&s)).unwrap(), s);
    }

    #[test]
    fn counit_of_sys2_collapses_the_diamond() {
        let eps = counit_system(&catalog::sys2()).unwrap();
        assert!(is_system_morphism(&eps).unwrap().passed());
        assert_eq!(eps.algebra_map(), &[0, 1, 0, 1]);
        assert!(!eps.is_iso());
    }

    #[test]
    fn counit_of_separated_system_is_iso() {
        let eps = counit_system(&catalog::sys1()).unwrap();
        assert!(eps.is_iso());
        let s = catalog::sierpinski();
        assert_eq!(
            counit_system(&e_space(&s)).unwrap(),
            SystemMorphism::identity(&e_space(&s))
        );
    }

    #[test]
    fn couniversal_with_counit_itself() {
        let sys = catalog::sys2();
        let eps = counit_system(&sys).unwrap();
        let r = verify_couniversal(&sys, &[eps], Budget::default()).unwrap();
        assert_eq!(r.factorizations, vec![1]);
    }

    #[test]
    fn couniversal_from_discrete_space() {
        let sys = catalog::sys1();
        let d = AffineSpace::discrete(
            AffineTheory::two(),
            vec!["x".into(), "y".into()],
            Budget::default(),
        )
        .unwrap();
        let spatial = spat(&sys).unwrap();
        let mut tests = Vec::new();
        for g in all_tuples(2, 2) {
            let eg = e_space_morphism(&g, &d, &spatial).unwrap();
            tests.push(counit_system(&sys).unwrap().after(&eg).unwrap());
        }
        let r = verify_couniversal(&sys, &tests, Budget::default()).unwrap();
        assert!(r.holds());
        assert_eq!(r.family_size, 4);
    }

    #[test]
    fn couniversal_rejects_malformed_tests() {
        let sys = catalog::sys1();
        let e = e_space(&catalog::sierpinski());
        // square fails at (m, q)
        let bad = SystemMorphism::from_parts(e, sys.clone(), vec![0, 1], vec![0, 0, 2]).unwrap();
        assert!(matches!(
            verify_couniversal(&sys, &[bad], Budget::default()),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            verify_couniversal(&sys, &[], Budget::default()),
            Err(Error::Vacuous(_))
        ));
    }

    #[test]
    fn triangles_hold_on_fixtures() {
        let spaces = [catalog::sierpinski(), spat(&catalog::sys2()).unwrap()];
        let systems = [catalog::sys1(), catalog::sys2()];
        assert!(verify_spatial_adjunction(&spaces, &systems)
            .unwrap()
            .holds());
    }
}
