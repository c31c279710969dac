use crate::algebra::{enumerate_homs, is_homomorphism, FiniteAlgebra, Homomorphism};
use crate::budget::{power, Budget};
use crate::error::{Error, Result};
use crate::topology::{
    is_system_morphism, AffineSpace, AffineSystem, AffineTheory, SystemMorphism, Tuple,
};

use super::spatial::space_algebra;
use super::UniversalReport;

/// Localification: the algebra of a system.
pub fn loc(sys: &AffineSystem) -> FiniteAlgebra {
    sys.algebra().clone()
}

/// `Loc` on a morphism: its algebra component, op-side `A₂ → A₁`.
pub fn loc_morphism(m: &SystemMorphism) -> Result<Homomorphism> {
    Homomorphism::new(
        m.target().algebra().clone(),
        m.source().algebra().clone(),
        m.algebra_map().to_vec(),
    )
}

/// Points of an algebra: every homomorphism into the base, canonically
/// ordered.
pub fn pt(alg: &FiniteAlgebra, theory: &AffineTheory, budget: Budget) -> Result<Vec<Homomorphism>> {
    enumerate_homs(alg, theory.base(), budget)
}

/// The co-universal arrow `A → V^{pt(A)}`, `ε(a)(p) = p(a)`.
pub fn counit_eps(
    alg: &FiniteAlgebra,
    theory: &AffineTheory,
    budget: Budget,
) -> Result<Vec<Tuple>> {
    let points = pt(alg, theory, budget)?;
    Ok((0..alg.size())
        .map(|a| points.iter().map(|p| p.apply(a)).collect())
        .collect())
}

fn point_labels(count: usize) -> Vec<String> {
    (0..count).map(|i| format!("p{i}")).collect()
}

/// The embedding of algebras into systems: points `pt(A)` (labelled
/// `p0, p1, ..`) and extent `counit_eps`.
pub fn e_loc(alg: &FiniteAlgebra, theory: &AffineTheory, budget: Budget) -> Result<AffineSystem> {
    let ext = counit_eps(alg, theory, budget)?;
    let count = ext.first().map_or(0, Vec::len);
    AffineSystem::from_parts(theory.clone(), point_labels(count), alg.clone(), ext)
}

/// `E_loc(φ) = (Pt φ, φ)` for an op-side homomorphism `phi_op : B₂ → B₁`,
/// as a morphism `E_loc(B₁) → E_loc(B₂)`; `Pt φ` sends `p` to `p ∘ φ_op`.
pub fn e_loc_morphism(
    phi_op: &Homomorphism,
    theory: &AffineTheory,
    budget: Budget,
) -> Result<SystemMorphism> {
    let (b2, b1) = (phi_op.source(), phi_op.target());
    let pts1 = pt(b1, theory, budget)?;
    let pts2 = pt(b2, theory, budget)?;
    let point_map = pts1
        .iter()
        .map(|p| {
            let composite = p.after(phi_op)?;
            Ok(pts2
                .binary_search_by(|q| q.map().cmp(composite.map()))
                .expect("composite is a point"))
        })
        .collect::<Result<Vec<usize>>>()?;
    SystemMorphism::from_parts(
        e_loc(b1, theory, budget)?,
        e_loc(b2, theory, budget)?,
        point_map,
        phi_op.map().to_vec(),
    )
}

/// The unit of `T ⊣ Pt` at a space's opens: each point `x` goes to the
/// evaluation `α ↦ α(x)`, located in `pt(opens)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitEta {
    pub algebra: FiniteAlgebra,
    pub points: Vec<Homomorphism>,
    /// `map[x]` indexes `points`.
    pub map: Vec<usize>,
}

impl UnitEta {
    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.points.len()];
        self.map
            .iter()
            .all(|&p| !std::mem::replace(&mut seen[p], true))
    }
}

pub fn unit_eta(space: &AffineSpace, budget: Budget) -> Result<UnitEta> {
    let algebra = space_algebra(space);
    let opens = space.open_list();
    let points = enumerate_homs(&algebra, space.theory().base(), budget)?;
    let map = (0..space.point_count())
        .map(|x| {
            let eval: Vec<usize> = opens.iter().map(|alpha| alpha[x]).collect();
            if !is_homomorphism(&algebra, space.theory().base(), &eval)?.passed() {
                return Err(Error::Malformed("evaluation is not a homomorphism".into()));
            }
            Ok(points
                .binary_search_by(|p| p.map().cmp(&eval))
                .expect("evaluation is a point"))
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(UnitEta {
        algebra,
        points,
        map,
    })
}

/// The universal arrow `sys → E_loc(Loc sys)`: `x` goes to the point
/// `a ↦ ext(a)(x)`, the algebra component is the identity.
pub fn loc_universal_arrow(sys: &AffineSystem, budget: Budget) -> Result<SystemMorphism> {
    let alg = sys.algebra();
    let target = e_loc(alg, sys.theory(), budget)?;
    let points = pt(alg, sys.theory(), budget)?;
    let point_map = (0..sys.point_count())
        .map(|x| {
            let eval: Vec<usize> = (0..alg.size()).map(|a| sys.value(a, x)).collect();
            points
                .binary_search_by(|p| p.map().cmp(&eval))
                .map_err(|_| {
                    Error::Malformed(format!(
                        "point `{}` does not give a homomorphism",
                        sys.points()[x]
                    ))
                })
        })
        .collect::<Result<Vec<usize>>>()?;
    SystemMorphism::from_parts(sys.clone(), target, point_map, (0..alg.size()).collect())
}

/// For each test morphism `sys → E_loc(B)`, counts the op-side
/// homomorphisms `ψ : B → A` with `E_loc(ψ) ∘ u = test`, `u` the universal
/// arrow.
pub fn verify_loc_universal(
    sys: &AffineSystem,
    tests: &[SystemMorphism],
    budget: Budget,
) -> Result<UniversalReport> {
    if tests.is_empty() {
        return Err(Error::Vacuous(
            "universality needs at least one test morphism".into(),
        ));
    }
    let u = loc_universal_arrow(sys, budget)?;
    let mut factorizations = Vec::with_capacity(tests.len());
    let mut candidates_checked = 0;
    for (i, test) in tests.iter().enumerate() {
        if test.source() != sys {
            return Err(Error::Malformed(format!(
                "test morphism {i} does not start at the system"
            )));
        }
        let b = test.target().algebra();
        if &e_loc(b, sys.theory(), budget)? != test.target() {
            return Err(Error::Malformed(format!(
                "test morphism {i} does not end at an embedded algebra"
            )));
        }
        if !is_system_morphism(test)?.passed() {
            return Err(Error::Malformed(format!(
                "test morphism {i} is not a system morphism"
            )));
        }
        let mut count = 0;
        for psi in enumerate_homs(b, sys.algebra(), budget)? {
            candidates_checked += 1;
            if &e_loc_morphism(&psi, sys.theory(), budget)?.after(&u)? == test {
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

/// Triangle identities of `P_V ⊣ Pt` over point sets and algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointsAdjunction {
    /// Unit components `X → Pt(V^X)`, one per point-set size.
    pub units: Vec<UnitEta>,
    /// Counit components `A → V^{pt(A)}`, one per algebra.
    pub counits: Vec<Vec<Tuple>>,
    /// `T(η_X)^op ∘ ε_{TX}^op = 1` on `V^X`, per point set.
    pub set_triangles: Vec<bool>,
    /// `Pt(ε_A) ∘ η_{Pt A} = 1` on `pt(A)`, per algebra.
    pub algebra_triangles: Vec<bool>,
}

impl PointsAdjunction {
    pub fn holds(&self) -> bool {
        self.set_triangles
            .iter()
            .chain(&self.algebra_triangles)
            .all(|&b| b)
    }
}

pub fn verify_points_adjunction(
    theory: &AffineTheory,
    point_counts: &[usize],
    algebras: &[FiniteAlgebra],
    budget: Budget,
) -> Result<PointsAdjunction> {
    if point_counts.is_empty() && algebras.is_empty() {
        return Err(Error::Vacuous(
            "adjunction check needs a non-empty family".into(),
        ));
    }
    let mut units = Vec::new();
    let mut set_triangles = Vec::new();
    for &n in point_counts {
        let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let space = AffineSpace::discrete(theory.clone(), labels, budget)?;
        let eta = unit_eta(&space, budget)?;
        // ε^op at V^X sends α to (p ↦ p(α)); precomposing with η gives x ↦ α(x)
        let opens = space.open_list();
        let ok = (0..opens.len()).all(|alpha| {
            let eps_alpha: Vec<usize> = eta.points.iter().map(|p| p.apply(alpha)).collect();
            let back: Vec<usize> = eta.map.iter().map(|&p| eps_alpha[p]).collect();
            back == opens[alpha]
        });
        set_triangles.push(ok);
        units.push(eta);
    }
    let mut counits = Vec::new();
    let mut algebra_triangles = Vec::new();
    for alg in algebras {
        let points = pt(alg, theory, budget)?;
        let eps = counit_eps(alg, theory, budget)?;
        budget.check(
            "pointwise algebra over pt(A)",
            power(theory.base().size(), points.len()),
        )?;
        // η at pt(A) evaluates tuples at p; Pt(ε) precomposes with ε
        let ok = points.iter().enumerate().all(|(i, p)| {
            let composite: Vec<usize> = (0..alg.size()).map(|a| eps[a][i]).collect();
            composite == p.map()
        });
        algebra_triangles.push(ok);
        counits.push(eps);
    }
    Ok(PointsAdjunction {
        units,
        counits,
        set_triangles,
        algebra_triangles,
    })
}
