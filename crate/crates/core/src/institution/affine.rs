use crate::algebra::{FiniteAlgebra, Homomorphism, TOP};
use crate::budget::Budget;
use crate::cat::{
    check_category, check_functor, CategoryFailure, FiniteCategory, FiniteFunctor, FunctorFailure,
    SetFunctor,
};
use crate::error::{Error, Result};
use crate::functor::{
    afsys_apply, afsys_apply_morphism, counit_system, e_loc, e_loc_morphism, e_space,
    e_space_morphism, loc, loc_morphism, loc_universal_arrow, spat, spat_morphism, spat_unit,
    theory_compose, TheoryMorphism,
};
use crate::outcome::Outcome;
use crate::topology::{
    is_space_morphism, is_system, is_system_morphism, AffineSpace, AffineSystem, AffineTheory,
    MorphismFailure, SystemFailure, SystemMorphism,
};

use super::elementary::ElementaryInstitution;

/// A functor `I` from a finite signature category into systems over one
/// theory: a system per object and a system morphism per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineInstitution {
    sign: FiniteCategory,
    theory: AffineTheory,
    systems: Vec<AffineSystem>,
    morphisms: Vec<SystemMorphism>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineInstFailure {
    Category(CategoryFailure),
    System {
        sig: usize,
        failure: SystemFailure,
    },
    Morphism {
        arrow: usize,
        failure: MorphismFailure,
    },
    /// A space-valued arrow whose point map is not continuous.
    Continuity {
        arrow: usize,
    },
    Identity {
        object: usize,
    },
    Composition {
        g: usize,
        f: usize,
    },
}

fn check_lengths(sign: &FiniteCategory, objects: usize, arrows: usize) -> Result<()> {
    if objects != sign.object_count() || arrows != sign.arrow_count() {
        return Err(Error::Malformed(
            "assignment must cover every object and arrow".into(),
        ));
    }
    Ok(())
}

/// Runs the functor laws given per-arrow comparison closures.
fn functor_laws(
    sign: &FiniteCategory,
    is_identity: impl Fn(usize) -> bool,
    composes: impl Fn(usize, usize, usize) -> Result<bool>,
) -> Result<Option<AffineInstFailure>> {
    for x in 0..sign.object_count() {
        if !is_identity(sign.identity(x)) {
            return Ok(Some(AffineInstFailure::Identity { object: x }));
        }
    }
    for (g, f) in sign.composable_pairs() {
        let gf = sign.compose(g, f).expect("category checked");
        if !composes(g, f, gf)? {
            return Ok(Some(AffineInstFailure::Composition { g, f }));
        }
    }
    Ok(None)
}

impl AffineInstitution {
    pub fn new(
        sign: FiniteCategory,
        theory: AffineTheory,
        systems: Vec<AffineSystem>,
        morphisms: Vec<SystemMorphism>,
    ) -> Result<Self> {
        check_lengths(&sign, systems.len(), morphisms.len())?;
        if systems.iter().any(|s| s.theory() != &theory) {
            return Err(Error::Malformed(
                "every system must live over the institution's theory".into(),
            ));
        }
        for (a, m) in morphisms.iter().enumerate() {
            if m.source() != &systems[sign.dom(a)] || m.target() != &systems[sign.cod(a)] {
                return Err(Error::Malformed(format!(
                    "morphism for `{}` does not connect the assigned systems",
                    sign.arrow_name(a)
                )));
            }
        }
        Ok(AffineInstitution {
            sign,
            theory,
            systems,
            morphisms,
        })
    }

    /// One signature mapped to `sys`.
    pub fn single(sig: &str, sys: AffineSystem) -> Self {
        let sign = FiniteCategory::single(sig);
        let id = SystemMorphism::identity(&sys);
        AffineInstitution {
            sign,
            theory: sys.theory().clone(),
            systems: vec![sys],
            morphisms: vec![id],
        }
    }

    pub fn sign(&self) -> &FiniteCategory {
        &self.sign
    }

    pub fn theory(&self) -> &AffineTheory {
        &self.theory
    }

    pub fn systems(&self) -> &[AffineSystem] {
        &self.systems
    }

    pub fn system(&self, sig: usize) -> &AffineSystem {
        &self.systems[sig]
    }

    pub fn morphisms(&self) -> &[SystemMorphism] {
        &self.morphisms
    }

    pub fn morphism(&self, arrow: usize) -> &SystemMorphism {
        &self.morphisms[arrow]
    }
}

pub fn check_affine_institution(ai: &AffineInstitution) -> Result<Outcome<AffineInstFailure>> {
    if let Outcome::Fail(f) = check_category(&ai.sign) {
        return Ok(Outcome::Fail(AffineInstFailure::Category(f)));
    }
    for (sig, s) in ai.systems.iter().enumerate() {
        if let Outcome::Fail(failure) = is_system(s) {
            return Ok(Outcome::Fail(AffineInstFailure::System { sig, failure }));
        }
    }
    for (arrow, m) in ai.morphisms.iter().enumerate() {
        if let Outcome::Fail(failure) = is_system_morphism(m)? {
            return Ok(Outcome::Fail(AffineInstFailure::Morphism {
                arrow,
                failure,
            }));
        }
    }
    let failure = functor_laws(
        &ai.sign,
        |id| ai.morphisms[id] == SystemMorphism::identity(&ai.morphisms[id].source().clone()),
        |g, f, gf| Ok(ai.morphisms[g].after(&ai.morphisms[f])? == ai.morphisms[gf]),
    )?;
    Ok(Outcome::from_witness(failure))
}

/// A functor from signatures into spaces; arrows carry continuous point
/// maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpatialAffineInstitution {
    sign: FiniteCategory,
    theory: AffineTheory,
    spaces: Vec<AffineSpace>,
    maps: Vec<Vec<usize>>,
}

impl SpatialAffineInstitution {
    pub fn new(
        sign: FiniteCategory,
        theory: AffineTheory,
        spaces: Vec<AffineSpace>,
        maps: Vec<Vec<usize>>,
    ) -> Result<Self> {
        check_lengths(&sign, spaces.len(), maps.len())?;
        if spaces.iter().any(|s| s.theory() != &theory) {
            return Err(Error::Malformed(
                "every space must live over the institution's theory".into(),
            ));
        }
        for (a, f) in maps.iter().enumerate() {
            let (d, c) = (&spaces[sign.dom(a)], &spaces[sign.cod(a)]);
            if f.len() != d.point_count() || f.iter().any(|&y| y >= c.point_count()) {
                return Err(Error::MalformedMap(format!(
                    "point map for `{}` has the wrong shape",
                    sign.arrow_name(a)
                )));
            }
        }
        Ok(SpatialAffineInstitution {
            sign,
            theory,
            spaces,
            maps,
        })
    }

    pub fn sign(&self) -> &FiniteCategory {
        &self.sign
    }

    pub fn theory(&self) -> &AffineTheory {
        &self.theory
    }

    pub fn spaces(&self) -> &[AffineSpace] {
        &self.spaces
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }
}

pub fn check_spatial_institution(
    si: &SpatialAffineInstitution,
) -> Result<Outcome<AffineInstFailure>> {
    if let Outcome::Fail(f) = check_category(&si.sign) {
        return Ok(Outcome::Fail(AffineInstFailure::Category(f)));
    }
    for (arrow, f) in si.maps.iter().enumerate() {
        let (d, c) = (
            &si.spaces[si.sign.dom(arrow)],
            &si.spaces[si.sign.cod(arrow)],
        );
        if !is_space_morphism(f, d, c)?.passed() {
            return Ok(Outcome::Fail(AffineInstFailure::Continuity { arrow }));
        }
    }
    let failure = functor_laws(
        &si.sign,
        |id| si.maps[id].iter().enumerate().all(|(i, &v)| i == v),
        |g, f, gf| {
            Ok(si.maps[f]
                .iter()
                .map(|&x| si.maps[g][x])
                .collect::<Vec<_>>()
                == si.maps[gf])
        },
    )?;
    Ok(Outcome::from_witness(failure))
}

/// A functor from signatures into algebras of the theory's variety, with
/// arrows carried op-side: `σ : Σ₁ → Σ₂` gives a homomorphism `A₂ → A₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalicAffineInstitution {
    sign: FiniteCategory,
    theory: AffineTheory,
    algebras: Vec<FiniteAlgebra>,
    homs: Vec<Homomorphism>,
}

impl LocalicAffineInstitution {
    pub fn new(
        sign: FiniteCategory,
        theory: AffineTheory,
        algebras: Vec<FiniteAlgebra>,
        homs: Vec<Homomorphism>,
    ) -> Result<Self> {
        check_lengths(&sign, algebras.len(), homs.len())?;
        for (a, h) in homs.iter().enumerate() {
            if h.source() != &algebras[sign.cod(a)] || h.target() != &algebras[sign.dom(a)] {
                return Err(Error::MalformedMap(format!(
                    "homomorphism for `{}` must run from the codomain's algebra to the domain's",
                    sign.arrow_name(a)
                )));
            }
        }
        Ok(LocalicAffineInstitution {
            sign,
            theory,
            algebras,
            homs,
        })
    }

    pub fn sign(&self) -> &FiniteCategory {
        &self.sign
    }

    pub fn theory(&self) -> &AffineTheory {
        &self.theory
    }

    pub fn algebras(&self) -> &[FiniteAlgebra] {
        &self.algebras
    }

    pub fn homs(&self) -> &[Homomorphism] {
        &self.homs
    }
}

pub fn check_localic_institution(
    li: &LocalicAffineInstitution,
) -> Result<Outcome<AffineInstFailure>> {
    if let Outcome::Fail(f) = check_category(&li.sign) {
        return Ok(Outcome::Fail(AffineInstFailure::Category(f)));
    }
    let failure = functor_laws(
        &li.sign,
        |id| li.homs[id] == Homomorphism::identity(li.homs[id].source()),
        |g, f, gf| Ok(li.homs[f].after(&li.homs[g])? == li.homs[gf]),
    )?;
    Ok(Outcome::from_witness(failure))
}

/// `IE`: every space embedded as a system.
pub fn ie_lift(si: &SpatialAffineInstitution) -> Result<AffineInstitution> {
    let systems: Vec<AffineSystem> = si.spaces.iter().map(e_space).collect();
    let morphisms = si
        .maps
        .iter()
        .enumerate()
        .map(|(a, f)| e_space_morphism(f, &si.spaces[si.sign.dom(a)], &si.spaces[si.sign.cod(a)]))
        .collect::<Result<Vec<_>>>()?;
    AffineInstitution::new(si.sign.clone(), si.theory.clone(), systems, morphisms)
}

/// `ISpat`: every system spatialized.
pub fn ispat_lift(ai: &AffineInstitution) -> Result<SpatialAffineInstitution> {
    let spaces = ai.systems.iter().map(spat).collect::<Result<Vec<_>>>()?;
    let maps = ai.morphisms.iter().map(spat_morphism).collect();
    SpatialAffineInstitution::new(ai.sign.clone(), ai.theory.clone(), spaces, maps)
}

/// `ILoc`: every system's algebra.
pub fn iloc_lift(ai: &AffineInstitution) -> Result<LocalicAffineInstitution> {
    let algebras = ai.systems.iter().map(loc).collect();
    let homs = ai
        .morphisms
        .iter()
        .map(loc_morphism)
        .collect::<Result<Vec<_>>>()?;
    LocalicAffineInstitution::new(ai.sign.clone(), ai.theory.clone(), algebras, homs)
}

/// `IE_loc`: every algebra embedded through its points.
pub fn ie_loc_lift(li: &LocalicAffineInstitution, budget: Budget) -> Result<AffineInstitution> {
    let systems = li
        .algebras
        .iter()
        .map(|a| e_loc(a, &li.theory, budget))
        .collect::<Result<Vec<_>>>()?;
    let morphisms = li
        .homs
        .iter()
        .map(|h| e_loc_morphism(h, &li.theory, budget))
        .collect::<Result<Vec<_>>>()?;
    AffineInstitution::new(li.sign.clone(), li.theory.clone(), systems, morphisms)
}

/// Components of a transformation between two lifts, with the first arrow
/// whose naturality square fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftComponents<C> {
    pub components: Vec<C>,
    pub naturality: Outcome<usize>,
}

fn first_failure(
    arrows: usize,
    mut commutes: impl FnMut(usize) -> Result<bool>,
) -> Result<Outcome<usize>> {
    for a in 0..arrows {
        if !commutes(a)? {
            return Ok(Outcome::Fail(a));
        }
    }
    Ok(Outcome::Pass)
}

/// Unit components `I Σ → Spat E I Σ` of a spatial institution.
pub fn spatial_unit_components(
    si: &SpatialAffineInstitution,
) -> Result<LiftComponents<Vec<usize>>> {
    let round = ispat_lift(&ie_lift(si)?)?;
    let components: Vec<Vec<usize>> = si.spaces.iter().map(spat_unit).collect();
    let compose = |g: &[usize], f: &[usize]| f.iter().map(|&x| g[x]).collect::<Vec<usize>>();
    let naturality = first_failure(si.sign.arrow_count(), |a| {
        let (d, c) = (si.sign.dom(a), si.sign.cod(a));
        Ok(compose(&round.maps[a], &components[d]) == compose(&components[c], &si.maps[a]))
    })?;
    Ok(LiftComponents {
        components,
        naturality,
    })
}

/// Counit components `E Spat I Σ → I Σ` of an affine institution.
pub fn spatial_counit_components(ai: &AffineInstitution) -> Result<LiftComponents<SystemMorphism>> {
    let round = ie_lift(&ispat_lift(ai)?)?;
    let components = ai
        .systems
        .iter()
        .map(counit_system)
        .collect::<Result<Vec<_>>>()?;
    let naturality = first_failure(ai.sign.arrow_count(), |a| {
        let (d, c) = (ai.sign.dom(a), ai.sign.cod(a));
        Ok(ai.morphisms[a].after(&components[d])? == components[c].after(&round.morphisms[a])?)
    })?;
    Ok(LiftComponents {
        components,
        naturality,
    })
}

/// Reflection components `I Σ → E_loc Loc I Σ` of an affine institution.
pub fn loc_reflection_components(
    ai: &AffineInstitution,
    budget: Budget,
) -> Result<LiftComponents<SystemMorphism>> {
    let round = ie_loc_lift(&iloc_lift(ai)?, budget)?;
    let components = ai
        .systems
        .iter()
        .map(|s| loc_universal_arrow(s, budget))
        .collect::<Result<Vec<_>>>()?;
    let naturality = first_failure(ai.sign.arrow_count(), |a| {
        let (d, c) = (ai.sign.dom(a), ai.sign.cod(a));
        Ok(round.morphisms[a].after(&components[d])? == components[c].after(&ai.morphisms[a])?)
    })?;
    Ok(LiftComponents {
        components,
        naturality,
    })
}

/// The elementary institution read off an affine institution over a
/// two-valued base, on the opposite signature category: sentences are
/// algebra elements, models are points, and `x ⊨ a` iff `ext(a)(x)` is top.
pub fn geo(ai: &AffineInstitution) -> Result<ElementaryInstitution> {
    if !ai.theory.is_two_valued() {
        return Err(Error::Malformed("geo needs a two-valued base".into()));
    }
    let top = ai
        .theory
        .base()
        .op(TOP, &[])
        .expect("two-valued base has top");
    let sign = ai.sign.opposite();
    let sen = SetFunctor::new(
        sign.clone(),
        ai.systems
            .iter()
            .map(|s| s.algebra().labels().to_vec())
            .collect(),
        ai.morphisms
            .iter()
            .map(|m| m.algebra_map().to_vec())
            .collect(),
        false,
    )?;
    let models = SetFunctor::new(
        sign,
        ai.systems.iter().map(|s| s.points().to_vec()).collect(),
        ai.morphisms
            .iter()
            .map(|m| m.point_map().to_vec())
            .collect(),
        true,
    )?;
    let sat = ai
        .systems
        .iter()
        .map(|s| {
            (0..s.point_count())
                .map(|x| {
                    (0..s.algebra().size())
                        .map(|a| s.value(a, x) == top)
                        .collect()
                })
                .collect()
        })
        .collect();
    ElementaryInstitution::new(sen, models, sat)
}

/// `(Φ, η, α)` with `α_Σ : AfSys_η(I₁ Σ) → I₂(Φ Σ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineInstMorphism {
    source: AffineInstitution,
    target: AffineInstitution,
    phi: FiniteFunctor,
    eta: TheoryMorphism,
    components: Vec<SystemMorphism>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineMorphismFailure {
    Functor(FunctorFailure),
    Component {
        sig: usize,
        failure: MorphismFailure,
    },
    Naturality {
        arrow: usize,
    },
}

impl AffineInstMorphism {
    pub fn new(
        source: AffineInstitution,
        target: AffineInstitution,
        phi: FiniteFunctor,
        eta: TheoryMorphism,
        components: Vec<SystemMorphism>,
    ) -> Result<Self> {
        if phi.source() != &source.sign || phi.target() != &target.sign || phi.is_contravariant() {
            return Err(Error::MalformedMap(
                "signature functor must run covariantly between the signature categories".into(),
            ));
        }
        if eta.source() != &source.theory || eta.target() != &target.theory {
            return Err(Error::MalformedMap(
                "theory morphism does not connect the institutions' theories".into(),
            ));
        }
        if components.len() != source.sign.object_count() {
            return Err(Error::MalformedMap(
                "one component per signature is required".into(),
            ));
        }
        for (x, c) in components.iter().enumerate() {
            if c.source() != &afsys_apply(&eta, &source.systems[x])?
                || c.target() != &target.systems[phi.object(x)]
            {
                return Err(Error::MalformedMap(format!(
                    "component at `{}` has the wrong endpoints",
                    source.sign.objects()[x]
                )));
            }
        }
        Ok(AffineInstMorphism {
            source,
            target,
            phi,
            eta,
            components,
        })
    }

    /// `(Φ, 1, α)` inside a single theory.
    pub fn over_theory(
        source: AffineInstitution,
        target: AffineInstitution,
        phi: FiniteFunctor,
        components: Vec<SystemMorphism>,
    ) -> Result<Self> {
        let eta = TheoryMorphism::identity(&source.theory);
        Self::new(source, target, phi, eta, components)
    }

    pub fn identity(ai: &AffineInstitution) -> Self {
        AffineInstMorphism {
            source: ai.clone(),
            target: ai.clone(),
            phi: FiniteFunctor::identity(&ai.sign),
            eta: TheoryMorphism::identity(&ai.theory),
            components: ai.systems.iter().map(SystemMorphism::identity).collect(),
        }
    }

    pub fn source(&self) -> &AffineInstitution {
        &self.source
    }

    pub fn target(&self) -> &AffineInstitution {
        &self.target
    }

    pub fn phi(&self) -> &FiniteFunctor {
        &self.phi
    }

    pub fn eta(&self) -> &TheoryMorphism {
        &self.eta
    }

    pub fn components(&self) -> &[SystemMorphism] {
        &self.components
    }
}

pub fn check_affine_inst_morphism(
    m: &AffineInstMorphism,
) -> Result<Outcome<AffineMorphismFailure>> {
    if let Outcome::Fail(f) = check_functor(&m.phi) {
        return Ok(Outcome::Fail(AffineMorphismFailure::Functor(f)));
    }
    for (sig, c) in m.components.iter().enumerate() {
        if let Outcome::Fail(failure) = is_system_morphism(c)? {
            return Ok(Outcome::Fail(AffineMorphismFailure::Component {
                sig,
                failure,
            }));
        }
    }
    let sign = &m.source.sign;
    for arrow in 0..sign.arrow_count() {
        let (d, c) = (sign.dom(arrow), sign.cod(arrow));
        let across = m.target.morphisms[m.phi.arrow(arrow)].after(&m.components[d])?;
        let down =
            m.components[c].after(&afsys_apply_morphism(&m.eta, &m.source.morphisms[arrow])?)?;
        if across != down {
            return Ok(Outcome::Fail(AffineMorphismFailure::Naturality { arrow }));
        }
    }
    Ok(Outcome::Pass)
}

/// `second ⊡ first`: signature functors and theory morphisms compose, and
/// the component at `Σ` is `α′_{ΦΣ} ∘ AfSys_{η′}(α_Σ)`.
pub fn compose_affine_inst_morphisms(
    second: &AffineInstMorphism,
    first: &AffineInstMorphism,
) -> Result<AffineInstMorphism> {
    if first.target != second.source {
        return Err(Error::MalformedMap(
            "affine institution morphisms are not composable".into(),
        ));
    }
    let phi = crate::cat::compose_functors(&second.phi, &first.phi)?;
    let eta = theory_compose(&second.eta, &first.eta)?;
    let components = first
        .components
        .iter()
        .enumerate()
        .map(|(x, a)| {
            second.components[first.phi.object(x)].after(&afsys_apply_morphism(&second.eta, a)?)
        })
        .collect::<Result<Vec<_>>>()?;
    AffineInstMorphism::new(
        first.source.clone(),
        second.target.clone(),
        phi,
        eta,
        components,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::functor::e_loc as embed;
    use crate::institution::{check_elementary, spatial_completion};
    use crate::topology::AffineSpace;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn fixture_is_an_affine_institution() {
        let ai = catalog::afinst();
        assert!(check_affine_institution(&ai).unwrap().passed());
    }

    #[test]
    fn broken_composition_is_caught() {
        // I(id) set to a non-identity endomorphism is rejected by the identity law
        let sys = catalog::sys1();
        let swap_free =
            SystemMorphism::new(sys.clone(), sys.clone(), vec![1, 1], vec![0, 2, 2]).unwrap();
        let ai = AffineInstitution::new(
            FiniteCategory::single("S"),
            sys.theory().clone(),
            vec![sys],
            vec![swap_free],
        )
        .unwrap();
        assert_eq!(
            check_affine_institution(&ai).unwrap().witness(),
            Some(&AffineInstFailure::Identity { object: 0 })
        );
    }

    #[test]
    fn geo_of_sys1() {
        let g = geo(&AffineInstitution::single("S", catalog::sys1())).unwrap();
        assert_eq!(g.models().set(0), &["p", "q"]);
        assert_eq!(g.sen().set(0), &["bot", "m", "top"]);
        assert_eq!(
            g.sat(0),
            &[vec![false, false, true], vec![false, true, true]]
        );
        assert!(check_elementary(&g).passed());
    }

    #[test]
    fn geo_of_point() {
        let th = AffineTheory::two();
        let space = AffineSpace::discrete(th, vec!["x".into()], b()).unwrap();
        let g = geo(&AffineInstitution::single("S", e_space(&space))).unwrap();
        assert_eq!((g.models().set(0).len(), g.sen().set(0).len()), (1, 2));
    }

    #[test]
    fn geo_of_fixture_passes_satisfaction() {
        let g = geo(&catalog::afinst()).unwrap();
        assert!(check_elementary(&g).passed());
    }

    #[test]
    fn geo_round_trips_inst1() {
        let inst = catalog::inst1();
        let sys = spatial_completion(&inst, 0, b()).unwrap();
        let g = geo(&AffineInstitution::single("S", sys.clone())).unwrap();
        // s ↦ the frame element equal to its extent
        for s in 0..2 {
            let ext: Vec<usize> = (0..2)
                .map(|m| usize::from(inst.satisfies(0, m, s)))
                .collect();
            let a = sys.ext().iter().position(|t| t == &ext).unwrap();
            for m in 0..2 {
                assert_eq!(g.satisfies(0, m, a), inst.satisfies(0, m, s));
            }
        }
    }

    #[test]
    fn spatial_lifts() {
        let si = catalog::spatial_afinst();
        assert!(check_spatial_institution(&si).unwrap().passed());
        let ai = ie_lift(&si).unwrap();
        assert!(check_affine_institution(&ai).unwrap().passed());
        assert_eq!(ai.system(1).ext(), catalog::sys1().ext());
        assert_eq!(ispat_lift(&ai).unwrap(), si);
        assert!(spatial_unit_components(&si).unwrap().naturality.passed());
        let counit = spatial_counit_components(&catalog::afinst()).unwrap();
        assert!(counit.naturality.passed());
    }

    #[test]
    fn localic_lifts() {
        let ai = AffineInstitution::single("S", catalog::sys1());
        let li = iloc_lift(&ai).unwrap();
        assert_eq!(li.algebras(), &[catalog::chain3()]);
        assert!(check_localic_institution(&li).unwrap().passed());
        let back = ie_loc_lift(&li, b()).unwrap();
        assert_eq!(
            back.system(0),
            &embed(&catalog::chain3(), ai.theory(), b()).unwrap()
        );
        assert_eq!(back.system(0).ext(), catalog::sys1().ext());
        assert_eq!(iloc_lift(&back).unwrap(), li);
        let r = loc_reflection_components(&AffineInstitution::single("S", catalog::sys2()), b())
            .unwrap();
        assert_eq!(r.components[0].point_map(), &[1]);
        let full = loc_reflection_components(&catalog::afinst(), b()).unwrap();
        assert!(full.naturality.passed());
    }

    #[test]
    fn morphism_composition() {
        let ai = catalog::afinst();
        let id = AffineInstMorphism::identity(&ai);
        assert!(check_affine_inst_morphism(&id).unwrap().passed());
        let m = catalog::afinst_endomorphism();
        assert!(check_affine_inst_morphism(&m).unwrap().passed());
        assert_eq!(compose_affine_inst_morphisms(&id, &m).unwrap(), m);
        assert_eq!(compose_affine_inst_morphisms(&m, &id).unwrap(), m);
        let mm = compose_affine_inst_morphisms(&m, &m).unwrap();
        assert!(check_affine_inst_morphism(&mm).unwrap().passed());
        let left =
            compose_affine_inst_morphisms(&compose_affine_inst_morphisms(&m, &m).unwrap(), &m)
                .unwrap();
        let right =
            compose_affine_inst_morphisms(&m, &compose_affine_inst_morphisms(&m, &m).unwrap())
                .unwrap();
        assert_eq!(left, right);
    }
}
