use std::collections::BTreeSet;

use super::{pull_back, validate_point_map, validate_points, AffineTheory, Tuple};
use crate::algebra::{all_tuples, Homomorphism};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::outcome::Outcome;

/// A point set together with a subalgebra `opens` of `V^X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineSpace {
    theory: AffineTheory,
    points: Vec<String>,
    opens: BTreeSet<Tuple>,
}

/// An operation instance whose pointwise result leaves the set of opens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureFailure {
    pub symbol: String,
    pub args: Vec<Tuple>,
    pub result: Tuple,
}

/// Whether `opens` is closed under every pointwise operation of the theory.
pub fn is_space(
    theory: &AffineTheory,
    points: usize,
    opens: &BTreeSet<Tuple>,
) -> Result<Outcome<ClosureFailure>> {
    for t in opens {
        theory.validate_tuple(t, points)?;
    }
    let fns = theory.functions(points);
    let members: Vec<&Tuple> = opens.iter().collect();
    for (i, s) in theory.signature().symbols().iter().enumerate() {
        for idx in all_tuples(members.len(), s.arity) {
            let args: Vec<&[usize]> = idx.iter().map(|&k| members[k].as_slice()).collect();
            let result = fns.apply(i, &args);
            if !opens.contains(&result) {
                return Ok(Outcome::Fail(ClosureFailure {
                    symbol: s.name.clone(),
                    args: args.iter().map(|a| a.to_vec()).collect(),
                    result,
                }));
            }
        }
    }
    Ok(Outcome::Pass)
}

impl AffineSpace {
    pub fn new(
        theory: AffineTheory,
        points: Vec<String>,
        opens: impl IntoIterator<Item = Tuple>,
    ) -> Result<Self> {
        validate_points(&points)?;
        let opens: BTreeSet<Tuple> = opens.into_iter().collect();
        if let Outcome::Fail(f) = is_space(&theory, points.len(), &opens)? {
            return Err(Error::Malformed(format!(
                "opens are not closed under `{}`: missing {}",
                f.symbol,
                theory.tuple_label(&f.result)
            )));
        }
        Ok(AffineSpace {
            theory,
            points,
            opens,
        })
    }

    pub(crate) fn new_unchecked(
        theory: AffineTheory,
        points: Vec<String>,
        opens: BTreeSet<Tuple>,
    ) -> Self {
        AffineSpace {
            theory,
            points,
            opens,
        }
    }

    /// Every function is open.
    pub fn discrete(theory: AffineTheory, points: Vec<String>, budget: Budget) -> Result<Self> {
        let opens = theory.functions(points.len()).all(budget)?;
        AffineSpace::new(theory, points, opens)
    }

    /// Only the subalgebra generated by the constants.
    pub fn indiscrete(theory: AffineTheory, points: Vec<String>) -> Result<Self> {
        validate_points(&points)?;
        let opens = theory
            .functions(points.len())
            .close(vec![], Budget::default())?;
        Ok(AffineSpace {
            theory,
            points,
            opens,
        })
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

    pub fn opens(&self) -> &BTreeSet<Tuple> {
        &self.opens
    }

    /// Opens in ascending order; position `i` is element `i` of the space's
    /// algebra of opens.
    pub fn open_list(&self) -> Vec<Tuple> {
        self.opens.iter().cloned().collect()
    }

    pub fn is_open(&self, t: &[usize]) -> bool {
        self.opens.contains(t)
    }
}

/// Whether `α ∘ f` is open in `source` for every open `α` of `target`;
/// fails with the offending `α`.
pub fn is_space_morphism(
    f: &[usize],
    source: &AffineSpace,
    target: &AffineSpace,
) -> Result<Outcome<Tuple>> {
    if source.theory != target.theory {
        return Err(Error::Malformed("spaces over different theories".into()));
    }
    validate_point_map(f, source.point_count(), target.point_count())?;
    Ok(Outcome::from_witness(
        target
            .opens
            .iter()
            .find(|alpha| !source.is_open(&pull_back(alpha, f)))
            .cloned(),
    ))
}

fn check_family(theory: &AffineTheory, family: &[(Vec<usize>, &AffineSpace)]) -> Result<()> {
    if family.iter().any(|(_, s)| s.theory() != theory) {
        return Err(Error::Malformed("lift family mixes theories".into()));
    }
    Ok(())
}

/// The initial structure on `points` for a source `fᵢ : X → Xᵢ`: the
/// subalgebra generated by every `α ∘ fᵢ` with `α` open in `Xᵢ`.
pub fn initial_lift(
    theory: &AffineTheory,
    points: Vec<String>,
    family: &[(Vec<usize>, &AffineSpace)],
    budget: Budget,
) -> Result<AffineSpace> {
    validate_points(&points)?;
    check_family(theory, family)?;
    let n = points.len();
    let mut seed = Vec::new();
    for (f, space) in family {
        validate_point_map(f, n, space.point_count())?;
        seed.extend(space.opens.iter().map(|alpha| pull_back(alpha, f)));
    }
    let opens = theory.functions(n).close(seed, budget)?;
    Ok(AffineSpace::new_unchecked(theory.clone(), points, opens))
}

/// The final structure on `points` for a sink `fᵢ : Xᵢ → X`: every `α` with
/// `α ∘ fᵢ` open in each `Xᵢ`. Filters all of `V^X`, so it is budgeted.
pub fn final_lift(
    theory: &AffineTheory,
    points: Vec<String>,
    family: &[(Vec<usize>, &AffineSpace)],
    budget: Budget,
) -> Result<AffineSpace> {
    validate_points(&points)?;
    check_family(theory, family)?;
    let n = points.len();
    for (f, space) in family {
        validate_point_map(f, space.point_count(), n)?;
    }
    let opens = theory
        .functions(n)
        .all(budget)?
        .into_iter()
        .filter(|alpha| family.iter().all(|(f, s)| s.is_open(&pull_back(alpha, f))))
        .collect();
    Ok(AffineSpace::new_unchecked(theory.clone(), points, opens))
}

/// Morphism check across a change of base: `φ ∘ α ∘ f ∈ τ₁` for every
/// `α ∈ τ₂`, with `phi_op : V₂ → V₁`.
pub fn variable_basis_morphism_check(
    f: &[usize],
    phi_op: &Homomorphism,
    source: &AffineSpace,
    target: &AffineSpace,
) -> Result<Outcome<Tuple>> {
    if phi_op.source() != target.theory.base() || phi_op.target() != source.theory.base() {
        return Err(Error::MalformedMap(
            "basis map must run from the target base to the source base".into(),
        ));
    }
    validate_point_map(f, source.point_count(), target.point_count())?;
    Ok(Outcome::from_witness(
        target
            .opens
            .iter()
            .find(|alpha| {
                let moved: Tuple = pull_back(alpha, f)
                    .into_iter()
                    .map(|v| phi_op.apply(v))
                    .collect();
                !source.is_open(&moved)
            })
            .cloned(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Variety;
    use crate::catalog;

    fn pts(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn sierpinski() -> AffineSpace {
        AffineSpace::new(
            AffineTheory::two(),
            pts(&["p", "q"]),
            vec![vec![0, 0], vec![0, 1], vec![1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn sierpinski_is_a_space() {
        let opens: BTreeSet<Tuple> = [vec![0, 0], vec![0, 1], vec![1, 1]].into_iter().collect();
        assert!(is_space(&AffineTheory::two(), 2, &opens).unwrap().passed());
    }

    #[test]
    fn full_function_algebra_is_a_space() {
        let s = AffineSpace::discrete(AffineTheory::two(), pts(&["p", "q"]), Budget::default())
            .unwrap();
        assert_eq!(s.opens().len(), 4);
    }

    #[test]
    fn lone_tuple_misses_constants() {
        let opens: BTreeSet<Tuple> = [vec![0, 1]].into_iter().collect();
        let out = is_space(&AffineTheory::two(), 2, &opens).unwrap();
        let w = out.witness().unwrap();
        assert!(w.symbol == "bot" || w.symbol == "top");
        assert!(is_space(&AffineTheory::two(), 3, &opens).is_err());
    }

    #[test]
    fn identity_and_discrete_source_are_morphisms() {
        let s = sierpinski();
        assert!(is_space_morphism(&[0, 1], &s, &s).unwrap().passed());
        let d = AffineSpace::discrete(AffineTheory::two(), pts(&["x", "y"]), Budget::default())
            .unwrap();
        for f in all_tuples(2, 2) {
            assert!(is_space_morphism(&f, &d, &s).unwrap().passed());
        }
    }

    #[test]
    fn swapping_sierpinski_points_is_not_continuous() {
        let s = sierpinski();
        assert_eq!(
            is_space_morphism(&[1, 0], &s, &s).unwrap().witness(),
            Some(&vec![0, 1])
        );
        // constant maps pull every open back to a constant
        assert!(is_space_morphism(&[1, 1], &s, &s).unwrap().passed());
    }

    #[test]
    fn initial_lift_examples() {
        let th = AffineTheory::two();
        let s = sierpinski();
        let same = initial_lift(
            &th,
            pts(&["p", "q"]),
            &[(vec![0, 1], &s)],
            Budget::default(),
        )
        .unwrap();
        assert_eq!(same, s);
        let lifted = initial_lift(
            &th,
            pts(&["x", "y"]),
            &[(vec![0, 1], &s)],
            Budget::default(),
        )
        .unwrap();
        assert_eq!(lifted.open_list(), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        let bare = initial_lift(&th, pts(&["x", "y"]), &[], Budget::default()).unwrap();
        assert_eq!(bare.open_list(), vec![vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn final_lift_examples() {
        let th = AffineTheory::two();
        let s = sierpinski();
        assert_eq!(
            final_lift(
                &th,
                pts(&["p", "q"]),
                &[(vec![0, 1], &s)],
                Budget::default()
            )
            .unwrap(),
            s
        );
        let collapsed =
            final_lift(&th, pts(&["*"]), &[(vec![0, 0], &s)], Budget::default()).unwrap();
        assert_eq!(collapsed.open_list(), vec![vec![0], vec![1]]);
        let free = final_lift(&th, pts(&["x", "y"]), &[], Budget::default()).unwrap();
        assert_eq!(free.opens().len(), 4);
    }

    #[test]
    fn variable_basis_reduces_to_plain_check_under_identity() {
        let s = sierpinski();
        let id = Homomorphism::identity(&catalog::two());
        for f in all_tuples(2, 2) {
            assert_eq!(
                variable_basis_morphism_check(&f, &id, &s, &s).unwrap(),
                is_space_morphism(&f, &s, &s).unwrap()
            );
        }
    }

    #[test]
    fn variable_basis_collapse() {
        let th3 = AffineTheory::new(catalog::chain3(), Variety::Frame).unwrap();
        let target = AffineSpace::new(
            th3.clone(),
            pts(&["p", "q"]),
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![1, 1],
                vec![1, 2],
                vec![2, 2],
                vec![0, 2],
            ],
        )
        .unwrap();
        let up = Homomorphism::new(catalog::chain3(), catalog::two(), vec![0, 1, 1]).unwrap();
        let down = Homomorphism::new(catalog::chain3(), catalog::two(), vec![0, 0, 1]).unwrap();
        let sierp = sierpinski();
        // m ↦ 1: (0,1),(1,1),(1,2) ↦ (0,1),(1,1),(1,1)
        assert!(variable_basis_morphism_check(&[0, 1], &up, &sierp, &target)
            .unwrap()
            .passed());
        // m ↦ 0 sends (1,2) to (0,1) and (1,1)=m-constant to (0,0): still open
        assert!(
            variable_basis_morphism_check(&[0, 1], &down, &sierp, &target)
                .unwrap()
                .passed()
        );
        // into the 1-point indiscrete space over 2 the m-constant must collapse to a constant
        let point = AffineSpace::indiscrete(AffineTheory::two(), pts(&["*"])).unwrap();
        assert!(variable_basis_morphism_check(&[0], &down, &point, &target)
            .unwrap()
            .passed());
        let chain_target = AffineSpace::discrete(th3, pts(&["p", "q"]), Budget::default()).unwrap();
        let out = variable_basis_morphism_check(&[0, 1], &down, &sierp, &chain_target).unwrap();
        // (1,0) ↦ (0,0)... but (2,0) ↦ (1,0) is not open in Sierpiński
        assert_eq!(out.witness(), Some(&vec![2, 0]));
    }
}
