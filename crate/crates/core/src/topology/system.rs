use std::fmt;

use super::{validate_point_map, validate_points, AffineTheory, Tuple};
use itertools::Itertools;

use crate::algebra::{all_isomorphisms, all_tuples, is_homomorphism, FiniteAlgebra, HomFailure};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::outcome::Outcome;

/// A point set, an algebra `A` of the theory's signature, and an extent map
/// `ext : A → V^X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineSystem {
    theory: AffineTheory,
    points: Vec<String>,
    algebra: FiniteAlgebra,
    ext: Vec<Tuple>,
}

/// An operation instance on which `ext` fails to commute, at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFailure {
    pub symbol: String,
    pub args: Vec<usize>,
    pub point: usize,
}

impl AffineSystem {
    /// Shape-checked construction; the homomorphism property is left to
    /// [`is_system`].
    pub fn from_parts(
        theory: AffineTheory,
        points: Vec<String>,
        algebra: FiniteAlgebra,
        ext: Vec<Tuple>,
    ) -> Result<Self> {
        validate_points(&points)?;
        algebra.signature().ensure_same(theory.signature())?;
        if ext.len() != algebra.size() {
            return Err(Error::Malformed(format!(
                "extent map has {} entries for an algebra of size {}",
                ext.len(),
                algebra.size()
            )));
        }
        for t in &ext {
            theory.validate_tuple(t, points.len())?;
        }
        Ok(AffineSystem {
            theory,
            points,
            algebra,
            ext,
        })
    }

    /// Construction that also requires `ext` to be a homomorphism.
    pub fn new(
        theory: AffineTheory,
        points: Vec<String>,
        algebra: FiniteAlgebra,
        ext: Vec<Tuple>,
    ) -> Result<Self> {
        let sys = Self::from_parts(theory, points, algebra, ext)?;
        if let Outcome::Fail(f) = is_system(&sys) {
            return Err(Error::Malformed(format!(
                "extent map does not preserve `{}` at {:?}, point `{}`",
                f.symbol, f.args, sys.points[f.point]
            )));
        }
        Ok(sys)
    }

    pub fn theory(&self) -> &AffineTheory {
        &self.theory
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn ext(&self) -> &[Tuple] {
        &self.ext
    }

    pub fn extent(&self, element: usize) -> &Tuple {
        &self.ext[element]
    }

    /// `ext(a)(x)` as an element of the base.
    pub fn value(&self, element: usize, point: usize) -> usize {
        self.ext[element][point]
    }

    pub fn with_points(&self, points: Vec<String>) -> Result<Self> {
        if points.len() != self.points.len() {
            return Err(Error::Malformed(
                "relabelling changes the number of points".into(),
            ));
        }
        validate_points(&points)?;
        Ok(AffineSystem {
            points,
            ..self.clone()
        })
    }
}

/// Whether `ext` is a homomorphism into the pointwise function algebra.
pub fn is_system(sys: &AffineSystem) -> Outcome<SystemFailure> {
    let base = sys.theory.base();
    for (i, s) in sys.algebra.signature().symbols().iter().enumerate() {
        for args in all_tuples(sys.algebra.size(), s.arity) {
            let lhs = &sys.ext[sys.algebra.apply(i, &args)];
            for x in 0..sys.points.len() {
                let at: Vec<usize> = args.iter().map(|&a| sys.ext[a][x]).collect();
                if lhs[x] != base.apply(i, &at) {
                    return Outcome::Fail(SystemFailure {
                        symbol: s.name.clone(),
                        args,
                        point: x,
                    });
                }
            }
        }
    }
    Outcome::Pass
}

/// A colliding pair `a < b` with `ext(a) = ext(b)`, if any.
pub fn separation_witness(sys: &AffineSystem) -> Option<(usize, usize)> {
    let n = sys.algebra.size();
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .find(|&(a, b)| sys.ext[a] == sys.ext[b])
}

/// Separated systems have an injective extent map.
pub fn is_separated(sys: &AffineSystem) -> bool {
    separation_witness(sys).is_none()
}

/// `(f, φ) : S₁ → S₂` with `f : X₁ → X₂` and `φ` stored op-side as a map
/// `A₂ → A₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SystemMorphism {
    source: AffineSystem,
    target: AffineSystem,
    point_map: Vec<usize>,
    algebra_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismFailure {
    /// The algebra component is not a homomorphism `A₂ → A₁`.
    NotHomomorphism(HomFailure),
    /// `ext₁(φ(a₂))(x₁) ≠ ext₂(a₂)(f(x₁))`.
    Square { element: usize, point: usize },
}

impl SystemMorphism {
    pub fn from_parts(
        source: AffineSystem,
        target: AffineSystem,
        point_map: Vec<usize>,
        algebra_map: Vec<usize>,
    ) -> Result<Self> {
        if source.theory != target.theory {
            return Err(Error::Malformed(
                "system morphism between different theories".into(),
            ));
        }
        validate_point_map(&point_map, source.point_count(), target.point_count())?;
        if algebra_map.len() != target.algebra.size()
            || algebra_map.iter().any(|&a| a >= source.algebra.size())
        {
            return Err(Error::MalformedMap(
                "algebra component must map the target algebra into the source algebra".into(),
            ));
        }
        Ok(SystemMorphism {
            source,
            target,
            point_map,
            algebra_map,
        })
    }

    pub fn new(
        source: AffineSystem,
        target: AffineSystem,
        point_map: Vec<usize>,
        algebra_map: Vec<usize>,
    ) -> Result<Self> {
        let m = Self::from_parts(source, target, point_map, algebra_map)?;
        match is_system_morphism(&m)? {
            Outcome::Pass => Ok(m),
            Outcome::Fail(f) => Err(Error::MalformedMap(format!("not a system morphism: {f:?}"))),
        }
    }

    pub fn identity(sys: &AffineSystem) -> Self {
        SystemMorphism {
            source: sys.clone(),
            target: sys.clone(),
            point_map: (0..sys.point_count()).collect(),
            algebra_map: (0..sys.algebra.size()).collect(),
        }
    }

    pub fn source(&self) -> &AffineSystem {
        &self.source
    }

    pub fn target(&self) -> &AffineSystem {
        &self.target
    }

    pub fn point_map(&self) -> &[usize] {
        &self.point_map
    }

    /// The op-side algebra component `A₂ → A₁`.
    pub fn algebra_map(&self) -> &[usize] {
        &self.algebra_map
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SystemMorphism) -> Result<SystemMorphism> {
        if first.target != self.source {
            return Err(Error::MalformedMap(
                "composite of non-composable system morphisms".into(),
            ));
        }
        Ok(SystemMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            point_map: first.point_map.iter().map(|&x| self.point_map[x]).collect(),
            algebra_map: self
                .algebra_map
                .iter()
                .map(|&a| first.algebra_map[a])
                .collect(),
        })
    }

    /// Same components between replacement endpoints, used when a functor
    /// acts on the endpoints but not on the components.
    pub(crate) fn with_endpoints(
        &self,
        source: AffineSystem,
        target: AffineSystem,
    ) -> Result<Self> {
        Self::from_parts(
            source,
            target,
            self.point_map.clone(),
            self.algebra_map.clone(),
        )
    }

    pub fn is_iso(&self) -> bool {
        let bij = |m: &[usize], n: usize| {
            let mut seen = vec![false; n];
            m.len() == n && m.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        };
        bij(&self.point_map, self.target.point_count())
            && bij(&self.algebra_map, self.source.algebra.size())
    }
}

impl fmt::Display for SystemMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let points: Vec<String> = self
            .point_map
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}->{}", self.source.points[x], self.target.points[y]))
            .collect();
        let alg: Vec<String> = self
            .algebra_map
            .iter()
            .enumerate()
            .map(|(a, &b)| {
                format!(
                    "{}->{}",
                    self.target.algebra.label(a),
                    self.source.algebra.label(b)
                )
            })
            .collect();
        write!(
            f,
            "points {{ {} }} algebra^op {{ {} }} (locale direction A1 -> A2)",
            points.join(", "),
            alg.join(", ")
        )
    }
}

/// The op-side square `ext₁(φ(a₂)) = ext₂(a₂) ∘ f` for all `a₂, x₁`, plus
/// the requirement that `φ` be a homomorphism.
pub fn is_system_morphism(m: &SystemMorphism) -> Result<Outcome<MorphismFailure>> {
    if let Outcome::Fail(f) = is_homomorphism(&m.target.algebra, &m.source.algebra, &m.algebra_map)?
    {
        return Ok(Outcome::Fail(MorphismFailure::NotHomomorphism(f)));
    }
    for a2 in 0..m.target.algebra.size() {
        for x1 in 0..m.source.point_count() {
            if m.source.value(m.algebra_map[a2], x1) != m.target.value(a2, m.point_map[x1]) {
                return Ok(Outcome::Fail(MorphismFailure::Square {
                    element: a2,
                    point: x1,
                }));
            }
        }
    }
    Ok(Outcome::Pass)
}

/// Searches for an isomorphism `s1 → s2`: a bijection of points together
/// with an algebra isomorphism `A₂ → A₁` satisfying the square. Point
/// bijections are enumerated in lexicographic order, guarded by `|X|!`.
pub fn find_system_isomorphism(
    s1: &AffineSystem,
    s2: &AffineSystem,
    budget: Budget,
) -> Result<Option<SystemMorphism>> {
    if s1.theory != s2.theory
        || s1.point_count() != s2.point_count()
        || s1.algebra.size() != s2.algebra.size()
    {
        return Ok(None);
    }
    let n = s1.point_count();
    let factorial = (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k));
    budget.check("point bijections", factorial)?;
    let algebra_isos = all_isomorphisms(&s2.algebra, &s1.algebra)?;
    for f in (0..n).permutations(n) {
        for phi in &algebra_isos {
            let square = (0..s2.algebra.size())
                .all(|a| (0..n).all(|x| s1.value(phi.apply(a), x) == s2.value(a, f[x])));
            if square {
                return Ok(Some(SystemMorphism::from_parts(
                    s1.clone(),
                    s2.clone(),
                    f,
                    phi.map().to_vec(),
                )?));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn sys1_is_a_separated_system() {
        let s = catalog::sys1();
        assert!(is_system(&s).passed());
        assert!(is_separated(&s));
    }

    #[test]
    fn constant_bottom_extent_breaks_top() {
        let th = AffineTheory::two();
        let s =
            AffineSystem::from_parts(th, vec!["p".into()], catalog::two(), vec![vec![0], vec![0]])
                .unwrap();
        assert_eq!(is_system(&s).witness().unwrap().symbol, "top");
        assert!(!is_separated(&s));
    }

    #[test]
    fn sys2_collides_bottom_with_b() {
        let s = catalog::sys2();
        assert!(is_system(&s).passed());
        assert_eq!(separation_witness(&s), Some((0, 2)));
    }

    #[test]
    fn one_element_algebra_is_separated() {
        let th = AffineTheory::two();
        let s =
            AffineSystem::from_parts(th, vec![], catalog::trivial_frame(), vec![vec![]]).unwrap();
        assert!(is_separated(&s));
        assert!(is_system(&s).passed());
    }

    #[test]
    fn identity_morphism_and_mismatch() {
        let s = catalog::sys1();
        assert!(is_system_morphism(&SystemMorphism::identity(&s))
            .unwrap()
            .passed());
        // m ↦ bot on the op-side: ext(bot)(q) = 0 but ext(m)(q) = 1
        let bad =
            SystemMorphism::from_parts(s.clone(), s.clone(), vec![0, 1], vec![0, 0, 2]).unwrap();
        assert_eq!(
            is_system_morphism(&bad).unwrap().witness(),
            Some(&MorphismFailure::Square {
                element: 1,
                point: 1
            })
        );
        let not_hom = SystemMorphism::from_parts(s.clone(), s, vec![0, 1], vec![1, 1, 2]).unwrap();
        assert!(matches!(
            is_system_morphism(&not_hom).unwrap().witness(),
            Some(MorphismFailure::NotHomomorphism(_))
        ));
    }

    #[test]
    fn composition_of_identities() {
        let s = catalog::sys1();
        let id = SystemMorphism::identity(&s);
        assert_eq!(id.after(&id).unwrap(), id);
        assert!(id.is_iso());
    }
}
