//! Affine spaces and affine systems over the theories `X ↦ V^X`.
//!
//! A point set is a labelled list; a function `X → V` is a [`Tuple`] of
//! element indices of `V` in point order. The function algebra `V^X` is
//! never stored: operations on tuples are evaluated pointwise on demand.

mod space;
mod system;
mod vickers;

use std::collections::BTreeSet;

use crate::algebra::{
    all_tuples, require_laws, FiniteAlgebra, Signature, Variety, BOT, JOIN, MEET, TOP,
};
use crate::budget::{power, Budget};
use crate::error::{Error, Result};

pub use space::{
    final_lift, initial_lift, is_space, is_space_morphism, variable_basis_morphism_check,
    AffineSpace, ClosureFailure,
};
pub use system::{
    find_system_isomorphism, is_separated, is_system, is_system_morphism, separation_witness,
    AffineSystem, MorphismFailure, SystemFailure, SystemMorphism,
};
pub use vickers::{vickers_axiom_check, VickersAxiom, VickersFailure, VickersReport};

/// A function from a point set into the base algebra.
pub type Tuple = Vec<usize>;

/// The concrete affine theory `X ↦ V^X` for a base algebra `V` of a variety.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineTheory {
    base: FiniteAlgebra,
    variety: Variety,
}

impl AffineTheory {
    pub fn new(base: FiniteAlgebra, variety: Variety) -> Result<Self> {
        require_laws(&base, variety)?;
        Ok(AffineTheory { base, variety })
    }

    /// The theory over the two-element frame.
    pub fn two() -> Self {
        AffineTheory::new(Variety::Frame.two(), Variety::Frame).expect("2 is a frame")
    }

    pub fn base(&self) -> &FiniteAlgebra {
        &self.base
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn signature(&self) -> &Signature {
        self.base.signature()
    }

    /// The intensional function algebra `V^X` for `points` points.
    pub fn functions(&self, points: usize) -> FunctionAlgebra<'_> {
        FunctionAlgebra {
            theory: self,
            points,
        }
    }

    /// Whether the base is a two-element algebra with lattice operations
    /// and `bot ≠ top`.
    pub fn is_two_valued(&self) -> bool {
        let b = &self.base;
        b.size() == 2
            && [JOIN, MEET]
                .iter()
                .all(|s| b.signature().get(s).map(|x| x.arity) == Some(2))
            && [BOT, TOP]
                .iter()
                .all(|s| b.signature().get(s).map(|x| x.arity) == Some(0))
            && b.op(BOT, &[]) != b.op(TOP, &[])
    }

    /// Label for a tuple: the base labels joined by `.`; `nil` when empty.
    pub fn tuple_label(&self, t: &[usize]) -> String {
        if t.is_empty() {
            "nil".to_string()
        } else {
            t.iter()
                .map(|&v| self.base.label(v))
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    pub(crate) fn validate_tuple(&self, t: &[usize], points: usize) -> Result<()> {
        if t.len() != points {
            return Err(Error::Malformed(format!(
                "tuple has {} entries but there are {points} points",
                t.len()
            )));
        }
        if let Some(bad) = t.iter().find(|&&v| v >= self.base.size()) {
            return Err(Error::Malformed(format!(
                "tuple value {bad} is outside the base algebra"
            )));
        }
        Ok(())
    }
}

/// `V^X` with pointwise operations, evaluated lazily.
#[derive(Clone, Copy, Debug)]
pub struct FunctionAlgebra<'a> {
    theory: &'a AffineTheory,
    points: usize,
}

impl<'a> FunctionAlgebra<'a> {
    pub fn points(&self) -> usize {
        self.points
    }

    pub fn apply(&self, symbol: usize, args: &[&[usize]]) -> Tuple {
        (0..self.points)
            .map(|x| {
                let at: Vec<usize> = args.iter().map(|t| t[x]).collect();
                self.theory.base.apply(symbol, &at)
            })
            .collect()
    }

    pub fn constant(&self, value: usize) -> Tuple {
        vec![value; self.points]
    }

    /// Number of functions `|V|^|X|`, saturating.
    pub fn cardinality(&self) -> u128 {
        power(self.theory.base.size(), self.points)
    }

    /// Every tuple, lexicographically; budgeted.
    pub fn all(&self, budget: Budget) -> Result<Vec<Tuple>> {
        budget.check("function algebra V^X", self.cardinality())?;
        Ok(all_tuples(self.theory.base.size(), self.points).collect())
    }

    /// Least set of tuples containing `seed` and closed under every pointwise
    /// operation, constants included.
    pub fn close(
        &self,
        seed: impl IntoIterator<Item = Tuple>,
        budget: Budget,
    ) -> Result<BTreeSet<Tuple>> {
        let sig = self.theory.signature();
        let mut members: BTreeSet<Tuple> = BTreeSet::new();
        let mut order: Vec<Tuple> = Vec::new();
        let mut queue: Vec<Tuple> = Vec::new();
        let limit = u128::from(budget.limit());
        let mut push = |t: Tuple, order: &mut Vec<Tuple>, queue: &mut Vec<Tuple>| -> Result<()> {
            if members.insert(t.clone()) {
                if members.len() as u128 > limit {
                    return Err(Error::Budget {
                        what: "pointwise closure".into(),
                        required: members.len() as u128,
                        budget: budget.limit(),
                    });
                }
                order.push(t.clone());
                queue.push(t);
            }
            Ok(())
        };
        for (i, s) in sig.symbols().iter().enumerate() {
            if s.arity == 0 {
                push(self.apply(i, &[]), &mut order, &mut queue)?;
            }
        }
        for t in seed {
            push(t, &mut order, &mut queue)?;
        }
        while let Some(new) = queue.pop() {
            for (i, s) in sig.symbols().iter().enumerate() {
                if s.arity == 0 {
                    continue;
                }
                let snapshot = order.clone();
                for idx in all_tuples(snapshot.len(), s.arity) {
                    let args: Vec<&[usize]> = idx.iter().map(|&k| snapshot[k].as_slice()).collect();
                    if !args.contains(&new.as_slice()) {
                        continue;
                    }
                    let r = self.apply(i, &args);
                    push(r, &mut order, &mut queue)?;
                }
            }
        }
        Ok(members)
    }

    /// Materialises `V^X` as a finite algebra with tuples in lexicographic
    /// order, labelled by [`AffineTheory::tuple_label`].
    pub fn materialize(&self, budget: Budget) -> Result<FiniteAlgebra> {
        let tuples = self.all(budget)?;
        let labels = tuples.iter().map(|t| self.theory.tuple_label(t)).collect();
        let n = self.theory.base.size();
        let sig = self.theory.signature().clone();
        FiniteAlgebra::from_fn(labels, &sig, |s, args| {
            let idx = sig.index_of(&s.name).expect("same signature");
            let vals: Vec<&[usize]> = args.iter().map(|&a| tuples[a].as_slice()).collect();
            crate::algebra::tuple_index(n, &self.apply(idx, &vals))
        })
    }
}

pub(crate) fn validate_points(points: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for p in points {
        if !seen.insert(p.as_str()) {
            return Err(Error::Malformed(format!("duplicate point label `{p}`")));
        }
    }
    Ok(())
}

pub(crate) fn validate_point_map(f: &[usize], from: usize, to: usize) -> Result<()> {
    if f.len() != from {
        return Err(Error::MalformedMap(format!(
            "point map has {} entries, expected {from}",
            f.len()
        )));
    }
    if let Some(bad) = f.iter().find(|&&y| y >= to) {
        return Err(Error::MalformedMap(format!(
            "point image {bad} is out of range"
        )));
    }
    Ok(())
}

/// `α ∘ f` for a tuple `α` over the codomain of `f`.
pub fn pull_back(alpha: &[usize], f: &[usize]) -> Tuple {
    f.iter().map(|&y| alpha[y]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn theory_requires_lawful_base() {
        assert!(AffineTheory::new(catalog::m3(), Variety::Frame).is_err());
        assert!(AffineTheory::new(catalog::chain3(), Variety::Frame).is_ok());
    }

    #[test]
    fn closure_of_nothing_is_constants() {
        let th = AffineTheory::two();
        let c = th.functions(2).close(vec![], Budget::default()).unwrap();
        assert_eq!(
            c.into_iter().collect::<Vec<_>>(),
            vec![vec![0, 0], vec![1, 1]]
        );
    }

    #[test]
    fn materialized_function_algebra_is_a_product() {
        let th = AffineTheory::two();
        let alg = th.functions(2).materialize(Budget::default()).unwrap();
        let sq =
            crate::algebra::product(&catalog::two(), &catalog::two(), Budget::default()).unwrap();
        assert!(crate::algebra::isomorphic(&alg, &sq).unwrap());
        assert_eq!(alg.labels()[1], "0.1");
    }

    #[test]
    fn function_algebra_budget() {
        let th = AffineTheory::two();
        assert!(matches!(
            th.functions(10).all(Budget(1000)),
            Err(Error::Budget { .. })
        ));
    }
}
