use super::AffineSystem;
use crate::algebra::{BOT, JOIN, MEET, TOP};
use crate::budget::{power, Budget};
use crate::error::{Error, Result};
use crate::outcome::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VickersAxiom {
    /// `x ⊨ ⋀S` iff `x ⊨ s` for all `s ∈ S`.
    Meet,
    /// `x ⊨ ⋁S` iff `x ⊨ s` for some `s ∈ S`.
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VickersFailure {
    pub axiom: VickersAxiom,
    /// Elements of `S`, ascending.
    pub subset: Vec<usize>,
    pub point: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VickersReport {
    pub subsets_checked: u64,
    pub outcome: Outcome<VickersFailure>,
}

impl VickersReport {
    pub fn passed(&self) -> bool {
        self.outcome.passed()
    }
}

/// Checks the two topological-system axioms on a system over a two-valued
/// base, for every subset `S` of the algebra with `|S| ≤ max_subset`
/// (all subsets when `None`). Subsets are visited in bitmask order.
pub fn vickers_axiom_check(
    sys: &AffineSystem,
    max_subset: Option<usize>,
    budget: Budget,
) -> Result<VickersReport> {
    if !sys.theory().is_two_valued() {
        return Err(Error::Malformed(
            "Vickers axioms need the two-element frame as base".into(),
        ));
    }
    let alg = sys.algebra();
    for (name, arity) in [(JOIN, 2), (MEET, 2), (BOT, 0), (TOP, 0)] {
        if alg.signature().get(name).map(|s| s.arity) != Some(arity) {
            return Err(Error::SignatureMismatch(name.to_string()));
        }
    }
    let n = alg.size();
    if n >= 64 {
        return Err(Error::Budget {
            what: "subsets of the system algebra".into(),
            required: power(2, n),
            budget: budget.limit(),
        });
    }
    budget.check("subsets of the system algebra", power(2, n))?;
    let top_v = sys.theory().base().op(TOP, &[]).expect("two-valued base");
    let holds = |a: usize, x: usize| sys.value(a, x) == top_v;
    let bot = alg.op(BOT, &[]).expect("checked");
    let top = alg.op(TOP, &[]).expect("checked");
    let limit = max_subset.unwrap_or(n);
    let mut checked = 0u64;
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize > limit {
            continue;
        }
        checked += 1;
        let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let meet = subset
            .iter()
            .fold(top, |acc, &a| alg.op(MEET, &[acc, a]).expect("checked"));
        let join = subset
            .iter()
            .fold(bot, |acc, &a| alg.op(JOIN, &[acc, a]).expect("checked"));
        for x in 0..sys.point_count() {
            let fail = if holds(meet, x) != subset.iter().all(|&a| holds(a, x)) {
                Some(VickersAxiom::Meet)
            } else if holds(join, x) != subset.iter().any(|&a| holds(a, x)) {
                Some(VickersAxiom::Join)
            } else {
                None
            };
            if let Some(axiom) = fail {
                return Ok(VickersReport {
                    subsets_checked: checked,
                    outcome: Outcome::Fail(VickersFailure {
                        axiom,
                        subset,
                        point: x,
                    }),
                });
            }
        }
    }
    Ok(VickersReport {
        subsets_checked: checked,
        outcome: Outcome::Pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::topology::{is_system, AffineTheory};

    #[test]
    fn sys1_and_sys2_satisfy_the_axioms() {
        let r = vickers_axiom_check(&catalog::sys1(), None, Budget::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.subsets_checked, 8);
        assert!(
            vickers_axiom_check(&catalog::sys2(), None, Budget::default())
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn join_violation_is_witnessed() {
        let sys = crate::topology::AffineSystem::from_parts(
            AffineTheory::two(),
            vec!["p".into()],
            catalog::diamond_frame(),
            vec![vec![0], vec![0], vec![0], vec![1]],
        )
        .unwrap();
        assert!(!is_system(&sys).passed());
        let r = vickers_axiom_check(&sys, None, Budget::default()).unwrap();
        let w = r.outcome.witness().unwrap();
        assert_eq!(w.axiom, VickersAxiom::Join);
        assert_eq!(w.subset, vec![1, 2]);
        assert_eq!(w.point, 0);
    }

    #[test]
    fn bounded_subset_size() {
        let r = vickers_axiom_check(&catalog::sys2(), Some(1), Budget::default()).unwrap();
        assert_eq!(r.subsets_checked, 5);
    }

    #[test]
    fn rejects_non_two_valued_base() {
        let th = AffineTheory::new(catalog::chain3(), crate::algebra::Variety::Frame).unwrap();
        let sys = crate::topology::AffineSystem::from_parts(
            th,
            vec![],
            catalog::two(),
            vec![vec![], vec![]],
        )
        .unwrap();
        assert!(vickers_axiom_check(&sys, None, Budget::default()).is_err());
    }
}
