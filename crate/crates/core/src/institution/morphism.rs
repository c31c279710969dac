use crate::cat::{
    check_functor, check_set_nat_trans, FiniteFunctor, FunctorFailure, NaturalityFailure,
    SetNatTrans,
};
use crate::error::{Error, Result};
use crate::outcome::Outcome;

use super::elementary::ElementaryInstitution;

/// Which way the sentence and model components point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `α : Sen′Φ ⇒ Sen`, `β : Mod ⇒ Mod′Φ`.
    Morphism,
    /// `α : Sen ⇒ Sen′Φ`, `β : Mod′Φ ⇒ Mod`. Not supported.
    Comorphism,
}

/// `(Φ, α, β) : I → I′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstitutionMorphism {
    source: ElementaryInstitution,
    target: ElementaryInstitution,
    phi: FiniteFunctor,
    alpha: SetNatTrans,
    beta: SetNatTrans,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstMorphismFailure {
    Functor(FunctorFailure),
    Alpha(NaturalityFailure),
    Beta(NaturalityFailure),
    /// `m ⊨ α(s′)` and `β(m) ⊨′ s′` disagree at signature `sig`.
    Satisfaction {
        sig: usize,
        model: usize,
        sentence: usize,
    },
}

impl InstitutionMorphism {
    /// Assembles a morphism from the signature functor and the component
    /// maps `alpha[Σ] : Sen′(ΦΣ) → Sen(Σ)`, `beta[Σ] : Mod(Σ) → Mod′(ΦΣ)`.
    ///
    /// Data tagged as a comorphism, or whose component shapes only fit the
    /// comorphism direction, is rejected with [`Error::Directionality`].
    pub fn new(
        source: ElementaryInstitution,
        target: ElementaryInstitution,
        phi: FiniteFunctor,
        alpha: Vec<Vec<usize>>,
        beta: Vec<Vec<usize>>,
        direction: Direction,
    ) -> Result<Self> {
        if direction == Direction::Comorphism {
            return Err(Error::Directionality(
                "comorphism data given; only the morphism direction is supported".into(),
            ));
        }
        if phi.source() != source.sign() || phi.target() != target.sign() || phi.is_contravariant()
        {
            return Err(Error::MalformedMap(
                "signature functor must run covariantly between the signature categories".into(),
            ));
        }
        let sen_phi = target.sen().precompose(&phi)?;
        let mod_phi = target.models().precompose(&phi)?;
        let fits =
            |comps: &[Vec<usize>], from: &dyn Fn(usize) -> usize, to: &dyn Fn(usize) -> usize| {
                comps.len() == source.sign().object_count()
                    && comps
                        .iter()
                        .enumerate()
                        .all(|(x, c)| c.len() == from(x) && c.iter().all(|&v| v < to(x)))
            };
        let sen_src = |x: usize| source.sen().set(x).len();
        let sen_tgt = |x: usize| sen_phi.set(x).len();
        let mod_src = |x: usize| source.models().set(x).len();
        let mod_tgt = |x: usize| mod_phi.set(x).len();
        let forward = fits(&alpha, &sen_tgt, &sen_src) && fits(&beta, &mod_src, &mod_tgt);
        let backward = fits(&alpha, &sen_src, &sen_tgt) && fits(&beta, &mod_tgt, &mod_src);
        if !forward && backward {
            return Err(Error::Directionality(
                "component shapes fit a comorphism (sentences forward, models backward)".into(),
            ));
        }
        let alpha = SetNatTrans::new(sen_phi, source.sen().clone(), alpha)?;
        let beta = SetNatTrans::new(source.models().clone(), mod_phi, beta)?;
        Ok(InstitutionMorphism {
            source,
            target,
            phi,
            alpha,
            beta,
        })
    }

    pub fn identity(inst: &ElementaryInstitution) -> Self {
        let phi = FiniteFunctor::identity(inst.sign());
        InstitutionMorphism {
            source: inst.clone(),
            target: inst.clone(),
            alpha: SetNatTrans::identity(inst.sen()),
            beta: SetNatTrans::identity(inst.models()),
            phi,
        }
    }

    pub fn source(&self) -> &ElementaryInstitution {
        &self.source
    }

    pub fn target(&self) -> &ElementaryInstitution {
        &self.target
    }

    pub fn phi(&self) -> &FiniteFunctor {
        &self.phi
    }

    pub fn alpha(&self) -> &SetNatTrans {
        &self.alpha
    }

    pub fn beta(&self) -> &SetNatTrans {
        &self.beta
    }
}

pub fn check_inst_morphism(mu: &InstitutionMorphism) -> Outcome<InstMorphismFailure> {
    if let Outcome::Fail(f) = check_functor(&mu.phi) {
        return Outcome::Fail(InstMorphismFailure::Functor(f));
    }
    if let Outcome::Fail(f) = check_set_nat_trans(&mu.alpha) {
        return Outcome::Fail(InstMorphismFailure::Alpha(f));
    }
    if let Outcome::Fail(f) = check_set_nat_trans(&mu.beta) {
        return Outcome::Fail(InstMorphismFailure::Beta(f));
    }
    for sig in 0..mu.source.sign().object_count() {
        let image = mu.phi.object(sig);
        let (alpha, beta) = (mu.alpha.component(sig), mu.beta.component(sig));
        for model in 0..mu.source.models().set(sig).len() {
            for sentence in 0..mu.target.sen().set(image).len() {
                if mu.source.satisfies(sig, model, alpha[sentence])
                    != mu.target.satisfies(image, beta[model], sentence)
                {
                    return Outcome::Fail(InstMorphismFailure::Satisfaction {
                        sig,
                        model,
                        sentence,
                    });
                }
            }
        }
    }
    Outcome::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn identity_passes() {
        let inst = catalog::inst1();
        assert!(check_inst_morphism(&InstitutionMorphism::identity(&inst)).passed());
    }

    #[test]
    fn swapped_models_fail() {
        let inst = catalog::inst1();
        let phi = FiniteFunctor::identity(inst.sign());
        let mu = InstitutionMorphism::new(
            inst.clone(),
            inst,
            phi,
            vec![vec![0, 1]],
            vec![vec![1, 0]],
            Direction::Morphism,
        )
        .unwrap();
        // m1 ⊭ s2 while β(m1) = m2 ⊨ s2
        assert_eq!(
            check_inst_morphism(&mu).witness(),
            Some(&InstMorphismFailure::Satisfaction {
                sig: 0,
                model: 0,
                sentence: 1
            })
        );
    }

    #[test]
    fn comorphism_rejected() {
        let inst = catalog::inst1();
        let phi = FiniteFunctor::identity(inst.sign());
        let tagged = InstitutionMorphism::new(
            inst.clone(),
            inst.clone(),
            phi.clone(),
            vec![vec![0, 1]],
            vec![vec![0, 1]],
            Direction::Comorphism,
        );
        assert!(matches!(tagged, Err(Error::Directionality(_))));
        // INST2 restricted to Σ₂ → INST1 at Σ₁ would need α of length 2 and β of length 3;
        // the reverse shapes are detected
        let inst2 = catalog::inst2();
        let single = crate::cat::FiniteCategory::single("S");
        let to_s2 =
            FiniteFunctor::new(single, inst2.sign().clone(), vec![1], vec![1], false).unwrap();
        let shapes = InstitutionMorphism::new(
            catalog::inst1(),
            inst2,
            to_s2,
            vec![vec![0, 1]],
            vec![vec![0, 1, 1]],
            Direction::Morphism,
        );
        assert!(
            matches!(shapes, Err(Error::Directionality(_))),
            "{shapes:?}"
        );
    }
}
