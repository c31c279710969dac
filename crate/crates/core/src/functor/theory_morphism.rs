use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{all_tuples, Homomorphism};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::topology::{validate_points, AffineSystem, AffineTheory, SystemMorphism};

/// A morphism of affine theories `X ↦ V₁^X` to `X ↦ V₂^X`.
///
/// The variety functor is the identity. The point-set functor renames
/// labels (unlisted labels stay put), and `η_X(α) = h ∘ α` for a base
/// homomorphism `h : V₁ → V₂`.
/// Squares checked, or the first failing `(f, α)`.
pub type Naturality = std::result::Result<usize, (Vec<usize>, Vec<usize>)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryMorphism {
    source: AffineTheory,
    target: AffineTheory,
    renaming: BTreeMap<String, String>,
    h: Homomorphism,
}

impl TheoryMorphism {
    pub fn new(
        source: AffineTheory,
        target: AffineTheory,
        h: Vec<usize>,
        renaming: BTreeMap<String, String>,
    ) -> Result<Self> {
        let h = Homomorphism::new(source.base().clone(), target.base().clone(), h)?;
        let renaming = renaming.into_iter().filter(|(k, v)| k != v).collect();
        Ok(TheoryMorphism {
            source,
            target,
            renaming,
            h,
        })
    }

    pub fn identity(theory: &AffineTheory) -> Self {
        TheoryMorphism {
            source: theory.clone(),
            target: theory.clone(),
            renaming: BTreeMap::new(),
            h: Homomorphism::identity(theory.base()),
        }
    }

    pub fn source(&self) -> &AffineTheory {
        &self.source
    }

    pub fn target(&self) -> &AffineTheory {
        &self.target
    }

    pub fn h(&self) -> &Homomorphism {
        &self.h
    }

    pub fn renaming(&self) -> &BTreeMap<String, String> {
        &self.renaming
    }

    pub fn rename<'a>(&'a self, label: &'a str) -> &'a str {
        self.renaming.get(label).map_or(label, String::as_str)
    }

    /// The component `η_X` on a single function.
    pub fn eta(&self, alpha: &[usize]) -> Vec<usize> {
        alpha.iter().map(|&v| self.h.apply(v)).collect()
    }

    /// Checks `η_Y(α) ∘ f = η_X(α ∘ f)` for every map `f : X → Y` and every
    /// `α ∈ V₁^Y` with `|X|, |Y| ≤ max_points`. Returns the number of
    /// squares checked, or the first failing `(f, α)`.
    pub fn check_naturality(&self, max_points: usize, budget: Budget) -> Result<Naturality> {
        let v = self.source.base().size();
        let mut checked = 0usize;
        for y in 0..=max_points {
            let alphas = self.source.functions(y).all(budget)?;
            for x in 0..=max_points {
                for f in all_tuples(y, x) {
                    for alpha in &alphas {
                        debug_assert!(alpha.iter().all(|&a| a < v));
                        let pulled: Vec<usize> = f.iter().map(|&i| alpha[i]).collect();
                        let lhs: Vec<usize> = f.iter().map(|&i| self.eta(alpha)[i]).collect();
                        if lhs != self.eta(&pulled) {
                            return Ok(Err((f, alpha.clone())));
                        }
                        checked += 1;
                    }
                }
            }
        }
        Ok(Ok(checked))
    }
}

/// `second ⊙ first`: base maps compose and renamings compose.
pub fn theory_compose(second: &TheoryMorphism, first: &TheoryMorphism) -> Result<TheoryMorphism> {
    if first.target != second.source {
        return Err(Error::MalformedMap(
            "theory morphisms are not composable".into(),
        ));
    }
    let keys: BTreeSet<&String> = first
        .renaming
        .keys()
        .chain(second.renaming.keys())
        .collect();
    let renaming = keys
        .into_iter()
        .map(|k| (k.clone(), second.rename(first.rename(k)).to_string()))
        .filter(|(k, v)| k != v)
        .collect();
    Ok(TheoryMorphism {
        source: first.source.clone(),
        target: second.target.clone(),
        renaming,
        h: second.h.after(&first.h)?,
    })
}

/// `AfSys` on objects: renamed points, the same algebra, and `ext′ = h ∘ ext`.
pub fn afsys_apply(tm: &TheoryMorphism, sys: &AffineSystem) -> Result<AffineSystem> {
    if sys.theory() != &tm.source {
        return Err(Error::Malformed(
            "system is not over the source theory".into(),
        ));
    }
    let points: Vec<String> = sys
        .points()
        .iter()
        .map(|p| tm.rename(p).to_string())
        .collect();
    validate_points(&points)
        .map_err(|_| Error::Malformed("renaming identifies two points of the system".into()))?;
    let ext = sys.ext().iter().map(|t| tm.eta(t)).collect();
    AffineSystem::from_parts(tm.target.clone(), points, sys.algebra().clone(), ext)
}

/// `AfSys` on morphisms: the components are unchanged, the endpoints move.
pub fn afsys_apply_morphism(tm: &TheoryMorphism, m: &SystemMorphism) -> Result<SystemMorphism> {
    m.with_endpoints(afsys_apply(tm, m.source())?, afsys_apply(tm, m.target())?)
}
