use super::hom::{enumerate_homs, Homomorphism};
use super::FiniteAlgebra;
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Componentwise product; the pair `(i, j)` is element `i * |b| + j`.
pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra, budget: Budget) -> Result<FiniteAlgebra> {
    a.signature().ensure_same(b.signature())?;
    let (n, m) = (a.size(), b.size());
    budget.check("product carrier", (n as u128) * (m as u128))?;
    let labels = (0..n)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| format!("{}|{}", a.label(i), b.label(j)))
        .collect();
    let sig = a.signature().clone();
    FiniteAlgebra::from_fn(labels, &sig, |s, args| {
        let idx = sig.index_of(&s.name).expect("same signature");
        let left: Vec<usize> = args.iter().map(|&p| p / m).collect();
        let right: Vec<usize> = args.iter().map(|&p| p % m).collect();
        a.apply(idx, &left) * m + b.apply(idx, &right)
    })
}

/// The two projections out of `product(a, b)`.
pub fn projections(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    prod: &FiniteAlgebra,
) -> (Homomorphism, Homomorphism) {
    let m = b.size();
    let first = (0..prod.size()).map(|p| p / m).collect();
    let second = (0..prod.size()).map(|p| p % m).collect();
    (
        Homomorphism::new_unchecked(prod.clone(), a.clone(), first),
        Homomorphism::new_unchecked(prod.clone(), b.clone(), second),
    )
}

/// A kernel relation presented as a subalgebra of `algebra × algebra`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub algebra: FiniteAlgebra,
    /// Related pairs, sorted.
    pub pairs: Vec<(usize, usize)>,
    /// The relation as an algebra, one element per pair in `pairs` order.
    pub relation: FiniteAlgebra,
    pub first: Homomorphism,
    pub second: Homomorphism,
}

impl Congruence {
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.pairs.binary_search(&(x, y)).is_ok()
    }

    pub fn is_diagonal(&self) -> bool {
        self.pairs.iter().all(|&(x, y)| x == y)
    }

    /// Builds the congruence from an explicit pair set, which must be a
    /// subalgebra of the square and an equivalence relation.
    pub fn from_pairs(
        algebra: &FiniteAlgebra,
        pairs: Vec<(usize, usize)>,
        budget: Budget,
    ) -> Result<Self> {
        let n = algebra.size();
        let mut pairs = pairs;
        pairs.sort_unstable();
        pairs.dedup();
        let has = |p: (usize, usize)| pairs.binary_search(&p).is_ok();
        if pairs.iter().any(|&(x, y)| x >= n || y >= n) {
            return Err(Error::Malformed("pair outside the carrier".into()));
        }
        let reflexive = (0..n).all(|x| has((x, x)));
        let symmetric = pairs.iter().all(|&(x, y)| has((y, x)));
        let transitive = pairs.iter().all(|&(x, y)| {
            pairs
                .iter()
                .filter(|&&(y2, _)| y2 == y)
                .all(|&(_, z)| has((x, z)))
        });
        if !(reflexive && symmetric && transitive) {
            return Err(Error::Malformed("relation is not an equivalence".into()));
        }
        let square = product(algebra, algebra, budget)?;
        let indices: Vec<usize> = pairs.iter().map(|&(x, y)| x * n + y).collect();
        let relation = square.restrict(&indices).map_err(|_| {
            Error::Malformed("relation is not compatible with the operations".into())
        })?;
        let first = Homomorphism::new_unchecked(
            relation.clone(),
            algebra.clone(),
            pairs.iter().map(|p| p.0).collect(),
        );
        let second = Homomorphism::new_unchecked(
            relation.clone(),
            algebra.clone(),
            pairs.iter().map(|p| p.1).collect(),
        );
        Ok(Congruence {
            algebra: algebra.clone(),
            pairs,
            relation,
            first,
            second,
        })
    }
}

/// `{(x, y) : h(x) = h(y)}` with its projections.
pub fn kernel_pair(h: &Homomorphism, budget: Budget) -> Result<Congruence> {
    let n = h.source().size();
    let pairs = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| h.apply(x) == h.apply(y))
        .collect();
    Congruence::from_pairs(h.source(), pairs, budget)
}

/// Image factorisation `h = inclusion ∘ corestriction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    /// Image elements in the target, sorted.
    pub elements: Vec<usize>,
    pub algebra: FiniteAlgebra,
    pub corestriction: Homomorphism,
    pub inclusion: Homomorphism,
}

pub fn image(h: &Homomorphism) -> Result<Image> {
    let mut elements: Vec<usize> = h.map().to_vec();
    elements.sort_unstable();
    elements.dedup();
    let algebra = h.target().restrict(&elements)?;
    let pos = |e: usize| elements.binary_search(&e).expect("image element");
    let corestriction = Homomorphism::new_unchecked(
        h.source().clone(),
        algebra.clone(),
        h.map().iter().map(|&e| pos(e)).collect(),
    );
    let inclusion =
        Homomorphism::new_unchecked(algebra.clone(), h.target().clone(), elements.clone());
    Ok(Image {
        elements,
        algebra,
        corestriction,
        inclusion,
    })
}

/// A test hom `g` that coequalizes the projections but does not factor
/// uniquely through `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoequalizerFailure {
    pub target: usize,
    pub hom: Vec<usize>,
    pub factorizations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoequalizerReport {
    /// Whether `q ∘ π1 = q ∘ π2`.
    pub coequalizes: bool,
    pub targets_checked: usize,
    pub homs_checked: usize,
    pub failures: Vec<CoequalizerFailure>,
}

impl CoequalizerReport {
    pub fn holds(&self) -> bool {
        self.coequalizes && self.failures.is_empty()
    }
}

/// Checks that `q` coequalizes the projections of `c` and that every
/// coequalizing hom into a member of `family` factors through `q` exactly
/// once. Both the test homs and the candidate factorizations are enumerated.
pub fn coequalizer_check(
    c: &Congruence,
    q: &Homomorphism,
    family: &[FiniteAlgebra],
    budget: Budget,
) -> Result<CoequalizerReport> {
    if family.is_empty() {
        return Err(Error::Vacuous(
            "coequalizer check needs at least one test target".into(),
        ));
    }
    if q.source() != &c.algebra {
        return Err(Error::Malformed(
            "q does not start at the congruence's algebra".into(),
        ));
    }
    let coequalizes = c.pairs.iter().all(|&(x, y)| q.apply(x) == q.apply(y));
    let mut failures = Vec::new();
    let mut homs_checked = 0;
    for (t, target) in family.iter().enumerate() {
        let factors = enumerate_homs(q.target(), target, budget)?;
        for g in enumerate_homs(&c.algebra, target, budget)? {
            if !c.pairs.iter().all(|&(x, y)| g.apply(x) == g.apply(y)) {
                continue;
            }
            homs_checked += 1;
            let count = factors
                .iter()
                .filter(|u| (0..c.algebra.size()).all(|x| u.apply(q.apply(x)) == g.apply(x)))
                .count();
            if count != 1 {
                failures.push(CoequalizerFailure {
                    target: t,
                    hom: g.map().to_vec(),
                    factorizations: count,
                });
            }
        }
    }
    Ok(CoequalizerReport {
        coequalizes,
        targets_checked: family.len(),
        homs_checked,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_laws, find_isomorphism, isomorphic, Variety};
    use crate::catalog;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn two_squared_is_the_diamond() {
        let two = catalog::two();
        let sq = product(&two, &two, b()).unwrap();
        assert_eq!(sq.size(), 4);
        assert!(find_isomorphism(&sq, &catalog::diamond_frame())
            .unwrap()
            .is_some());
    }

    #[test]
    fn product_with_trivial_algebra_is_unit() {
        let c3 = catalog::chain3();
        let one = catalog::trivial_frame();
        assert!(isomorphic(&product(&c3, &one, b()).unwrap(), &c3).unwrap());
    }

    #[test]
    fn two_times_three_chain_has_homomorphic_projections() {
        let (two, c3) = (catalog::two(), catalog::chain3());
        let p = product(&two, &c3, b()).unwrap();
        assert_eq!(p.size(), 6);
        let (p1, p2) = projections(&two, &c3, &p);
        assert!(crate::algebra::is_homomorphism(&p, &two, p1.map())
            .unwrap()
            .passed());
        assert!(crate::algebra::is_homomorphism(&p, &c3, p2.map())
            .unwrap()
            .passed());
        assert!(check_laws(&p, Variety::Frame).unwrap().passed());
    }

    #[test]
    fn product_budget() {
        let c3 = catalog::chain3();
        assert!(matches!(
            product(&c3, &c3, Budget(8)),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn kernel_of_injective_is_diagonal() {
        let (two, c3) = (catalog::two(), catalog::chain3());
        let h = Homomorphism::new(two, c3, vec![0, 2]).unwrap();
        let k = kernel_pair(&h, b()).unwrap();
        assert!(k.is_diagonal());
        assert_eq!(k.pairs.len(), 2);
    }

    #[test]
    fn kernel_of_prime_filter_on_diamond() {
        let d = catalog::diamond_frame();
        let up_a = Homomorphism::new(d.clone(), catalog::two(), vec![0, 1, 0, 1]).unwrap();
        let k = kernel_pair(&up_a, b()).unwrap();
        let (bot, a, bb, top) = (0, 1, 2, 3);
        assert!(k.related(bot, bb) && k.related(a, top));
        assert!(!k.related(bot, a));
        assert_eq!(k.pairs.len(), 8);
        for (x, y) in k.pairs.iter().copied() {
            assert_eq!(up_a.apply(x), up_a.apply(y));
        }
        assert_eq!(
            up_a.after(&k.first).unwrap(),
            up_a.after(&k.second).unwrap()
        );
    }

    #[test]
    fn kernel_is_never_full_for_nontrivial_image() {
        let c3 = catalog::chain3();
        let h = Homomorphism::new(c3.clone(), catalog::two(), vec![0, 1, 1]).unwrap();
        let k = kernel_pair(&h, b()).unwrap();
        assert!(k.pairs.len() < 9);
        assert!(k.related(1, 2) && !k.related(0, 1));
    }

    #[test]
    fn image_of_chain_in_diamond() {
        let (c3, d) = (catalog::chain3(), catalog::diamond_frame());
        let h = Homomorphism::new(c3, d.clone(), vec![0, 1, 3]).unwrap();
        let im = image(&h).unwrap();
        assert_eq!(im.elements, vec![0, 1, 3]);
        assert_eq!(im.inclusion.after(&im.corestriction).unwrap(), h);
        assert!(im.corestriction.is_surjective());
    }

    #[test]
    fn image_of_surjection_and_identity() {
        let c3 = catalog::chain3();
        let h = Homomorphism::new(c3.clone(), catalog::two(), vec![0, 0, 1]).unwrap();
        assert_eq!(image(&h).unwrap().elements, vec![0, 1]);
        assert_eq!(image(&Homomorphism::identity(&c3)).unwrap().algebra, c3);
    }

    #[test]
    fn corestriction_coequalizes_its_kernel() {
        let d = catalog::diamond_frame();
        let h = Homomorphism::new(d.clone(), catalog::two(), vec![0, 1, 0, 1]).unwrap();
        let k = kernel_pair(&h, b()).unwrap();
        let q = image(&h).unwrap().corestriction;
        let family = [catalog::two(), catalog::chain3(), d.clone()];
        let report = coequalizer_check(&k, &q, &family, b()).unwrap();
        assert!(report.holds(), "{report:?}");
        assert!(report.homs_checked > 0);
    }

    #[test]
    fn identity_coequalizes_diagonal() {
        let d = catalog::diamond_frame();
        let id = Homomorphism::identity(&d);
        let diag = kernel_pair(&id, b()).unwrap();
        assert!(
            coequalizer_check(&diag, &id, &[d.clone(), catalog::two()], b())
                .unwrap()
                .holds()
        );
    }

    #[test]
    fn collapsing_more_than_the_congruence_fails() {
        let d = catalog::diamond_frame();
        let diag = kernel_pair(&Homomorphism::identity(&d), b()).unwrap();
        let q = Homomorphism::new(d.clone(), catalog::two(), vec![0, 1, 0, 1]).unwrap();
        let report = coequalizer_check(&diag, &q, std::slice::from_ref(&d), b()).unwrap();
        assert!(report.coequalizes);
        assert!(!report.holds());
        // the identity of the diamond has no factorization through 2
        assert!(report
            .failures
            .iter()
            .any(|f| f.hom == vec![0, 1, 2, 3] && f.factorizations == 0));
    }

    #[test]
    fn empty_family_is_vacuous() {
        let d = catalog::diamond_frame();
        let id = Homomorphism::identity(&d);
        let diag = kernel_pair(&id, b()).unwrap();
        assert!(matches!(
            coequalizer_check(&diag, &id, &[], b()),
            Err(Error::Vacuous(_))
        ));
    }
}
