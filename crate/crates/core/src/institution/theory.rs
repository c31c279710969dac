use std::collections::BTreeSet;

use crate::budget::{power, Budget};
use crate::error::{Error, Result};
use crate::functor::e_space;
use crate::outcome::Outcome;
use crate::topology::{AffineSpace, AffineSystem, AffineTheory};

use super::elementary::ElementaryInstitution;

pub type SentenceSet = BTreeSet<usize>;

fn check_sig(inst: &ElementaryInstitution, sig: usize) -> Result<()> {
    if sig >= inst.sign().object_count() {
        return Err(Error::Malformed(format!(
            "signature index {sig} out of range"
        )));
    }
    Ok(())
}

/// Models satisfying every sentence of `phi`.
pub fn models_of(inst: &ElementaryInstitution, sig: usize, phi: &SentenceSet) -> Vec<usize> {
    (0..inst.models().set(sig).len())
        .filter(|&m| phi.iter().all(|&s| inst.satisfies(sig, m, s)))
        .collect()
}

/// `Φ^⊢`: the sentences true in every model of `phi`.
pub fn entailment_closure(
    inst: &ElementaryInstitution,
    sig: usize,
    phi: &SentenceSet,
) -> Result<SentenceSet> {
    check_sig(inst, sig)?;
    let sentences = inst.sen().set(sig).len();
    if let Some(&s) = phi.iter().find(|&&s| s >= sentences) {
        return Err(Error::Malformed(format!("sentence index {s} out of range")));
    }
    let models = models_of(inst, sig, phi);
    Ok((0..sentences)
        .filter(|&s| models.iter().all(|&m| inst.satisfies(sig, m, s)))
        .collect())
}

/// The closed sentence sets at one signature, ordered so that a stronger
/// theory sits lower: `Φ ≤ Ψ` iff `Ψ ⊆ Φ`. Joins are intersections and
/// meets are closures of unions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryLattice {
    pub sig: usize,
    /// Sorted by size, then lexicographically.
    pub theories: Vec<SentenceSet>,
    pub leq: Vec<Vec<bool>>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
}

impl TheoryLattice {
    pub fn index_of(&self, phi: &SentenceSet) -> Option<usize> {
        self.theories.iter().position(|t| t == phi)
    }

    pub fn len(&self) -> usize {
        self.theories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theories.is_empty()
    }

    /// The weakest theory, `∅^⊢`.
    pub fn top(&self) -> usize {
        0
    }

    /// All sentences.
    pub fn bottom(&self) -> usize {
        self.theories.len() - 1
    }

    /// Checks that every subset `S` of theories has join `⋂S` and meet
    /// `(⋃S)^⊢` in the list and that both are the least upper and greatest
    /// lower bound for the order. The witness is the first failing subset.
    pub fn check_complete(
        &self,
        inst: &ElementaryInstitution,
        budget: Budget,
    ) -> Result<Outcome<Vec<usize>>> {
        let n = self.theories.len();
        budget.check("subsets of the theory lattice", power(2, n))?;
        let all: SentenceSet = (0..inst.sen().set(self.sig).len()).collect();
        for mask in 0u64..(1u64 << n) {
            let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let inter = members
                .iter()
                .fold(all.clone(), |acc, &i| &acc & &self.theories[i]);
            let union: SentenceSet = members
                .iter()
                .flat_map(|&i| self.theories[i].iter().copied())
                .collect();
            let meet = entailment_closure(inst, self.sig, &union)?;
            let ok = match (self.index_of(&inter), self.index_of(&meet)) {
                (Some(j), Some(m)) => {
                    let upper = |u: usize| members.iter().all(|&s| self.leq[s][u]);
                    let lower = |l: usize| members.iter().all(|&s| self.leq[l][s]);
                    upper(j)
                        && (0..n).filter(|&u| upper(u)).all(|u| self.leq[j][u])
                        && lower(m)
                        && (0..n).filter(|&l| lower(l)).all(|l| self.leq[l][m])
                }
                _ => false,
            };
            if !ok {
                return Ok(Outcome::Fail(members));
            }
        }
        Ok(Outcome::Pass)
    }
}

/// Enumerates every closed subset of `Sen(Σ)`, budgeted by `2^|Sen(Σ)|`.
pub fn theory_lattice(
    inst: &ElementaryInstitution,
    sig: usize,
    budget: Budget,
) -> Result<TheoryLattice> {
    check_sig(inst, sig)?;
    let sentences = inst.sen().set(sig).len();
    budget.check("sentence subsets", power(2, sentences))?;
    let mut theories = Vec::new();
    for mask in 0u64..(1u64 << sentences) {
        let phi: SentenceSet = (0..sentences).filter(|s| mask >> s & 1 == 1).collect();
        if entailment_closure(inst, sig, &phi)? == phi {
            theories.push(phi);
        }
    }
    theories.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let n = theories.len();
    let leq = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| theories[j].is_subset(&theories[i]))
                .collect()
        })
        .collect();
    let find = |t: &SentenceSet| theories.iter().position(|u| u == t).expect("closed");
    let join = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| find(&(&theories[i] & &theories[j])))
                .collect()
        })
        .collect();
    let meet = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    Ok(find(&entailment_closure(
                        inst,
                        sig,
                        &(&theories[i] | &theories[j]),
                    )?))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TheoryLattice {
        sig,
        theories,
        leq,
        join,
        meet,
    })
}

/// A join `⋁S = ⋂S` that the forcing relation does not respect: `model`
/// forces the join but none of the members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinFailure {
    pub subset: Vec<usize>,
    pub model: usize,
}

/// `(Mod Σ, Th_Σ, ⊩)` with `x ⊩ Φ` iff `x` satisfies all of `Φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheorySystem {
    pub models: Vec<String>,
    pub lattice: TheoryLattice,
    /// `forces[model][theory]`.
    pub forces: Vec<Vec<bool>>,
    /// First non-empty subset whose meet is not respected, if any.
    pub meet_failure: Option<(Vec<usize>, usize)>,
    /// Every non-empty subset whose join is not respected, with one model.
    pub join_failures: Vec<JoinFailure>,
}

pub fn theory_system(
    inst: &ElementaryInstitution,
    sig: usize,
    budget: Budget,
) -> Result<TheorySystem> {
    let lattice = theory_lattice(inst, sig, budget)?;
    let models = inst.models().set(sig).to_vec();
    let n = lattice.len();
    budget.check("subsets of the theory lattice", power(2, n))?;
    let forces: Vec<Vec<bool>> = (0..models.len())
        .map(|m| {
            lattice
                .theories
                .iter()
                .map(|phi| phi.iter().all(|&s| inst.satisfies(sig, m, s)))
                .collect()
        })
        .collect();
    let mut meet_failure = None;
    let mut join_failures = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let (j, m) = members[1..]
            .iter()
            .fold((members[0], members[0]), |(j, m), &i| {
                (lattice.join[j][i], lattice.meet[m][i])
            });
        for (x, row) in forces.iter().enumerate() {
            if meet_failure.is_none() && row[m] != members.iter().all(|&i| row[i]) {
                meet_failure = Some((members.clone(), x));
            }
            if row[j] && !members.iter().any(|&i| row[i]) {
                join_failures.push(JoinFailure {
                    subset: members.clone(),
                    model: x,
                });
                break;
            }
        }
    }
    Ok(TheorySystem {
        models,
        lattice,
        forces,
        meet_failure,
        join_failures,
    })
}

/// Label of a set of models: names joined by `+`, `∅` when empty.
pub fn extent_label(models: &[String], extent: &[usize]) -> String {
    let names: Vec<&str> = extent
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == 1)
        .map(|(i, _)| models[i].as_str())
        .collect();
    if names.is_empty() {
        "∅".to_string()
    } else {
        names.join("+")
    }
}

/// The finite stand-in for the coverage completion: the extents
/// `{x : x ⊩ Φ}` of all theories, closed under finite intersections and
/// unions, as a frame of subsets of `Mod Σ` with membership as extent map.
pub fn spatial_completion(
    inst: &ElementaryInstitution,
    sig: usize,
    budget: Budget,
) -> Result<AffineSystem> {
    let ts = theory_system(inst, sig, budget)?;
    let theory = AffineTheory::two();
    let seed: Vec<Vec<usize>> = (0..ts.lattice.len())
        .map(|t| ts.forces.iter().map(|row| usize::from(row[t])).collect())
        .collect();
    let closed = theory.functions(ts.models.len()).close(seed, budget)?;
    let space = AffineSpace::new(theory, ts.models.clone(), closed)?;
    let sys = e_space(&space);
    let labels = space
        .open_list()
        .iter()
        .map(|t| extent_label(&ts.models, t))
        .collect();
    let algebra = sys.algebra().relabel(labels)?;
    AffineSystem::from_parts(
        sys.theory().clone(),
        sys.points().to_vec(),
        algebra,
        sys.ext().to_vec(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::topology::{is_separated, is_system, vickers_axiom_check};

    fn set(v: &[usize]) -> SentenceSet {
        v.iter().copied().collect()
    }

    #[test]
    fn closure_examples() {
        let inst = catalog::inst1();
        assert_eq!(entailment_closure(&inst, 0, &set(&[])).unwrap(), set(&[0]));
        assert_eq!(
            entailment_closure(&inst, 0, &set(&[1])).unwrap(),
            set(&[0, 1])
        );
        assert_eq!(
            entailment_closure(&inst, 0, &set(&[0, 1])).unwrap(),
            set(&[0, 1])
        );
        assert!(entailment_closure(&inst, 0, &set(&[5])).is_err());
    }

    #[test]
    fn inst1_lattice() {
        let inst = catalog::inst1();
        let l = theory_lattice(&inst, 0, Budget::default()).unwrap();
        assert_eq!(l.theories, vec![set(&[0]), set(&[0, 1])]);
        assert!(l.leq[1][0] && !l.leq[0][1]);
        assert_eq!(l.join[0][1], 0);
        assert_eq!(l.meet[0][1], 1);
        assert!(l.check_complete(&inst, Budget::default()).unwrap().passed());
        assert!(theory_lattice(&inst, 0, Budget(3)).is_err());
    }

    #[test]
    fn no_models_gives_one_theory() {
        let inst = catalog::modelless_institution();
        let l = theory_lattice(&inst, 0, Budget::default()).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l.theories[0].len(), inst.sen().set(0).len());
    }

    #[test]
    fn inst1_forcing() {
        let ts = theory_system(&catalog::inst1(), 0, Budget::default()).unwrap();
        assert_eq!(ts.forces, vec![vec![true, false], vec![true, true]]);
        assert!(ts.meet_failure.is_none());
        assert!(ts.join_failures.is_empty());
    }

    #[test]
    fn join_gap_is_reported() {
        let inst = catalog::join_gap_institution();
        let ts = theory_system(&inst, 0, Budget::default()).unwrap();
        assert!(ts.meet_failure.is_none());
        let f = &ts.join_failures[0];
        let members: Vec<&SentenceSet> =
            f.subset.iter().map(|&i| &ts.lattice.theories[i]).collect();
        assert_eq!(members, vec![&set(&[0, 2]), &set(&[1, 2])]);
        assert_eq!(ts.models[f.model], "m3");
    }

    #[test]
    fn inst1_completion() {
        let sys = spatial_completion(&catalog::inst1(), 0, Budget::default()).unwrap();
        assert_eq!(sys.algebra().labels(), &["∅", "m2", "m1+m2"]);
        assert_eq!(sys.ext(), catalog::sys1().ext());
        assert!(is_system(&sys).passed() && is_separated(&sys));
        assert!(vickers_axiom_check(&sys, None, Budget::default())
            .unwrap()
            .outcome
            .passed());
    }

    #[test]
    fn single_theory_completion() {
        let sys =
            spatial_completion(&catalog::modelless_institution(), 0, Budget::default()).unwrap();
        // no models: the frame {∅} on the empty point set
        assert_eq!(sys.algebra().size(), 1);
        let trivial = catalog::trivial_institution();
        let sys = spatial_completion(&trivial, 0, Budget::default()).unwrap();
        assert_eq!(sys.algebra().size(), 2);
    }
}
