use super::{all_tuples, tuple_index, FiniteAlgebra};
use crate::budget::{power, Budget};
use crate::error::{Error, Result};
use crate::outcome::Outcome;

/// A structure-preserving map between two algebras of the same signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    map: Vec<usize>,
}

/// The first operation instance on which a map fails to commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomFailure {
    pub symbol: String,
    pub args: Vec<usize>,
}

fn validate_map(source: &FiniteAlgebra, target: &FiniteAlgebra, map: &[usize]) -> Result<()> {
    source.signature().ensure_same(target.signature())?;
    if map.len() != source.size() {
        return Err(Error::MalformedMap(format!(
            "map has {} entries, source carrier has {}",
            map.len(),
            source.size()
        )));
    }
    if let Some(bad) = map.iter().find(|&&v| v >= target.size()) {
        return Err(Error::MalformedMap(format!(
            "image {bad} is outside the target carrier of size {}",
            target.size()
        )));
    }
    Ok(())
}

/// Checks `f(ω_A(a..)) = ω_B(f(a)..)` for every symbol and every tuple.
pub fn is_homomorphism(
    source: &FiniteAlgebra,
    target: &FiniteAlgebra,
    map: &[usize],
) -> Result<Outcome<HomFailure>> {
    validate_map(source, target, map)?;
    for (i, sym) in source.signature().symbols().iter().enumerate() {
        for args in all_tuples(source.size(), sym.arity) {
            let image: Vec<usize> = args.iter().map(|&a| map[a]).collect();
            if map[source.apply(i, &args)] != target.apply(i, &image) {
                return Ok(Outcome::Fail(HomFailure {
                    symbol: sym.name.clone(),
                    args,
                }));
            }
        }
    }
    Ok(Outcome::Pass)
}

impl Homomorphism {
    pub fn new(source: FiniteAlgebra, target: FiniteAlgebra, map: Vec<usize>) -> Result<Self> {
        match is_homomorphism(&source, &target, &map)? {
            Outcome::Pass => Ok(Homomorphism {
                source,
                target,
                map,
            }),
            Outcome::Fail(f) => Err(Error::MalformedMap(format!(
                "not a homomorphism: `{}` fails at {:?}",
                f.symbol, f.args
            ))),
        }
    }

    pub(crate) fn new_unchecked(
        source: FiniteAlgebra,
        target: FiniteAlgebra,
        map: Vec<usize>,
    ) -> Self {
        debug_assert!(is_homomorphism(&source, &target, &map)
            .map(|o| o.passed())
            .unwrap_or(false));
        Homomorphism {
            source,
            target,
            map,
        }
    }

    pub fn identity(alg: &FiniteAlgebra) -> Self {
        Homomorphism {
            source: alg.clone(),
            target: alg.clone(),
            map: (0..alg.size()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, element: usize) -> usize {
        self.map[element]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Homomorphism) -> Result<Homomorphism> {
        if first.target != self.source {
            return Err(Error::MalformedMap(
                "composite of non-composable homomorphisms".into(),
            ));
        }
        let map = first.map.iter().map(|&e| self.map[e]).collect();
        Ok(Homomorphism::new_unchecked(
            first.source.clone(),
            self.target.clone(),
            map,
        ))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        self.map
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }
}

/// A single commuting condition `f(result) = ω_B(f(args))`, resolvable once
/// every element it mentions has been assigned.
struct Constraint {
    symbol: usize,
    args: Vec<usize>,
    result: usize,
}

/// Depth-first assignment of images in element order; after assigning an
/// element, every constraint that just became fully determined is checked.
pub(crate) struct HomSearch<'a> {
    source: &'a FiniteAlgebra,
    target: &'a FiniteAlgebra,
    // constraints indexed by the largest element they mention
    by_last: Vec<Vec<Constraint>>,
    injective: bool,
}

impl<'a> HomSearch<'a> {
    pub(crate) fn new(
        source: &'a FiniteAlgebra,
        target: &'a FiniteAlgebra,
        injective: bool,
    ) -> Self {
        let n = source.size();
        let mut by_last: Vec<Vec<Constraint>> = (0..n).map(|_| Vec::new()).collect();
        for (i, sym) in source.signature().symbols().iter().enumerate() {
            for args in all_tuples(n, sym.arity) {
                let result = source.table(i)[tuple_index(n, &args)];
                let last = args
                    .iter()
                    .copied()
                    .chain(std::iter::once(result))
                    .max()
                    .unwrap_or(result);
                by_last[last].push(Constraint {
                    symbol: i,
                    args,
                    result,
                });
            }
        }
        HomSearch {
            source,
            target,
            by_last,
            injective,
        }
    }

    fn consistent(&self, element: usize, map: &[usize]) -> bool {
        self.by_last[element].iter().all(|c| {
            let image: Vec<usize> = c.args.iter().map(|&a| map[a]).collect();
            map[c.result] == self.target.apply(c.symbol, &image)
        })
    }

    /// Visits every homomorphism in lexicographic order of the map array.
    /// The visitor returns `false` to stop early.
    pub(crate) fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let n = self.source.size();
        let m = self.target.size();
        let mut map = vec![0usize; n];
        let mut used = vec![false; m];
        self.descend(0, n, m, &mut map, &mut used, visit);
    }

    fn descend(
        &self,
        element: usize,
        n: usize,
        m: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if element == n {
            return visit(map);
        }
        for candidate in 0..m {
            if self.injective && used[candidate] {
                continue;
            }
            map[element] = candidate;
            if !self.consistent(element, map) {
                continue;
            }
            used[candidate] = true;
            let keep_going = self.descend(element + 1, n, m, map, used, visit);
            used[candidate] = false;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Every homomorphism `source → target`, ordered lexicographically by map.
///
/// The budget bounds the raw candidate count `|target|^|source|`.
pub fn enumerate_homs(
    source: &FiniteAlgebra,
    target: &FiniteAlgebra,
    budget: Budget,
) -> Result<Vec<Homomorphism>> {
    source.signature().ensure_same(target.signature())?;
    budget.check(
        format!("homomorphisms {}→{}", source.size(), target.size()),
        power(target.size(), source.size()),
    )?;
    let mut out = Vec::new();
    HomSearch::new(source, target, false).run(&mut |map| {
        out.push(Homomorphism::new_unchecked(
            source.clone(),
            target.clone(),
            map.to_vec(),
        ));
        true
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn brute_force(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Vec<usize>> {
        all_tuples(b.size(), a.size())
            .filter(|m| is_homomorphism(a, b, m).unwrap().passed())
            .collect()
    }

    #[test]
    fn identity_is_a_homomorphism() {
        for alg in [catalog::two(), catalog::chain3(), catalog::diamond_cba()] {
            let id: Vec<usize> = (0..alg.size()).collect();
            assert!(is_homomorphism(&alg, &alg, &id).unwrap().passed());
        }
    }

    #[test]
    fn two_into_three_chain() {
        let (two, c3) = (catalog::two(), catalog::chain3());
        assert!(is_homomorphism(&two, &c3, &[0, 2]).unwrap().passed());
        // ⊤ ↦ m breaks the nullary `top`
        let failure = is_homomorphism(&two, &c3, &[0, 1]).unwrap();
        assert_eq!(failure.witness().unwrap().symbol, "top");
    }

    #[test]
    fn three_chain_onto_two_both_ways() {
        let (c3, two) = (catalog::chain3(), catalog::two());
        assert!(is_homomorphism(&c3, &two, &[0, 0, 1]).unwrap().passed());
        assert!(is_homomorphism(&c3, &two, &[0, 1, 1]).unwrap().passed());
        assert_eq!(brute_force(&c3, &two), vec![vec![0, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn malformed_maps_are_rejected() {
        let (c3, two) = (catalog::chain3(), catalog::two());
        assert!(matches!(
            is_homomorphism(&c3, &two, &[0, 1]),
            Err(Error::MalformedMap(_))
        ));
        assert!(matches!(
            is_homomorphism(&c3, &two, &[0, 1, 2]),
            Err(Error::MalformedMap(_))
        ));
        assert!(matches!(
            is_homomorphism(&catalog::diamond_cba(), &two, &[0, 0, 1, 1]),
            Err(Error::SignatureMismatch(_))
        ));
    }

    #[test]
    fn enumeration_counts() {
        let two = catalog::two();
        let homs = enumerate_homs(&two, &two, Budget::default()).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].map(), &[0, 1]);
        assert_eq!(
            enumerate_homs(&catalog::chain3(), &two, Budget::default())
                .unwrap()
                .len(),
            2
        );
        let d = catalog::diamond_frame();
        let homs = enumerate_homs(&d, &two, Budget::default()).unwrap();
        let maps: Vec<&[usize]> = homs.iter().map(|h| h.map()).collect();
        // ↑b then ↑a, elements ordered bot, a, b, top
        assert_eq!(maps, vec![&[0, 0, 1, 1][..], &[0, 1, 0, 1][..]]);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let algs = [
            catalog::two(),
            catalog::chain3(),
            catalog::diamond_frame(),
            catalog::chain(4),
            catalog::chain(5),
        ];
        for a in &algs {
            for b in &algs {
                let fast: Vec<Vec<usize>> = enumerate_homs(a, b, Budget::default())
                    .unwrap()
                    .into_iter()
                    .map(|h| h.map().to_vec())
                    .collect();
                assert_eq!(fast, brute_force(a, b));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_homs(&catalog::chain(5), &catalog::chain(5), Budget(100)).unwrap_err();
        assert!(matches!(
            err,
            Error::Budget {
                required: 3125,
                budget: 100,
                ..
            }
        ));
    }

    #[test]
    fn composition_of_homomorphisms() {
        let (two, c3) = (catalog::two(), catalog::chain3());
        let up = Homomorphism::new(two.clone(), c3.clone(), vec![0, 2]).unwrap();
        let down = Homomorphism::new(c3, two.clone(), vec![0, 1, 1]).unwrap();
        let round = down.after(&up).unwrap();
        assert_eq!(round, Homomorphism::identity(&two));
        assert!(up.is_injective() && !up.is_surjective());
        assert!(down.is_surjective() && !down.is_injective());
    }
}
