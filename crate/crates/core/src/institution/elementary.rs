use std::collections::BTreeSet;

use crate::cat::{
    check_category, check_set_functor, CategoryFailure, FiniteCategory, FunctorFailure, SetFunctor,
};
use crate::error::{Error, Result};
use crate::outcome::Outcome;

/// A set-valued institution: covariant sentences, contravariant models and
/// a dense satisfaction matrix `sat[Σ][model][sentence]` per signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryInstitution {
    sen: SetFunctor,
    models: SetFunctor,
    sat: Vec<Vec<Vec<bool>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryFailure {
    Category(CategoryFailure),
    Sen(FunctorFailure),
    Mod(FunctorFailure),
    /// `m′ ⊨ Sen(φ)(s)` and `Mod(φ)(m′) ⊨ s` disagree.
    Satisfaction {
        arrow: usize,
        model: usize,
        sentence: usize,
    },
}

impl ElementaryInstitution {
    pub fn new(sen: SetFunctor, models: SetFunctor, sat: Vec<Vec<Vec<bool>>>) -> Result<Self> {
        if sen.source() != models.source() {
            return Err(Error::Malformed(
                "sentence and model functors live on different signature categories".into(),
            ));
        }
        if sen.is_contravariant() || !models.is_contravariant() {
            return Err(Error::Malformed(
                "sentences must be covariant and models contravariant".into(),
            ));
        }
        let sign = sen.source();
        if sat.len() != sign.object_count() {
            return Err(Error::Malformed(
                "one satisfaction matrix per signature is required".into(),
            ));
        }
        for (x, m) in sat.iter().enumerate() {
            let name = &sign.objects()[x];
            if m.len() != models.set(x).len() || m.iter().any(|row| row.len() != sen.set(x).len()) {
                return Err(Error::Malformed(format!(
                    "satisfaction matrix at `{name}` has the wrong shape"
                )));
            }
            for labels in [models.set(x), sen.set(x)] {
                if labels.iter().collect::<BTreeSet<_>>().len() != labels.len() {
                    return Err(Error::Malformed(format!("duplicate label at `{name}`")));
                }
            }
        }
        Ok(ElementaryInstitution { sen, models, sat })
    }

    /// Builds the matrices from a satisfied-pairs list per signature.
    pub fn from_pairs(
        sen: SetFunctor,
        models: SetFunctor,
        pairs: &[Vec<(usize, usize)>],
    ) -> Result<Self> {
        let sat = (0..sen.source().object_count())
            .map(|x| {
                let mut m = vec![vec![false; sen.set(x).len()]; models.set(x).len()];
                for &(i, s) in pairs.get(x).map(Vec::as_slice).unwrap_or(&[]) {
                    *m.get_mut(i).and_then(|row| row.get_mut(s)).ok_or_else(|| {
                        Error::Malformed("satisfaction pair out of range".into())
                    })? = true;
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sen, models, sat)
    }

    pub fn sign(&self) -> &FiniteCategory {
        self.sen.source()
    }

    pub fn sen(&self) -> &SetFunctor {
        &self.sen
    }

    pub fn models(&self) -> &SetFunctor {
        &self.models
    }

    pub fn sat(&self, sig: usize) -> &[Vec<bool>] {
        &self.sat[sig]
    }

    pub fn satisfies(&self, sig: usize, model: usize, sentence: usize) -> bool {
        self.sat[sig][model][sentence]
    }

    pub fn with_sat(&self, sat: Vec<Vec<Vec<bool>>>) -> Result<Self> {
        Self::new(self.sen.clone(), self.models.clone(), sat)
    }
}

pub fn check_elementary(inst: &ElementaryInstitution) -> Outcome<ElementaryFailure> {
    let sign = inst.sign();
    if let Outcome::Fail(f) = check_category(sign) {
        return Outcome::Fail(ElementaryFailure::Category(f));
    }
    if let Outcome::Fail(f) = check_set_functor(&inst.sen) {
        return Outcome::Fail(ElementaryFailure::Sen(f));
    }
    if let Outcome::Fail(f) = check_set_functor(&inst.models) {
        return Outcome::Fail(ElementaryFailure::Mod(f));
    }
    for arrow in 0..sign.arrow_count() {
        let (x, y) = (sign.dom(arrow), sign.cod(arrow));
        let (sen_map, mod_map) = (inst.sen.map(arrow), inst.models.map(arrow));
        for model in 0..inst.models.set(y).len() {
            for sentence in 0..inst.sen.set(x).len() {
                if inst.sat[y][model][sen_map[sentence]] != inst.sat[x][mod_map[model]][sentence] {
                    return Outcome::Fail(ElementaryFailure::Satisfaction {
                        arrow,
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
    fn inst1_passes() {
        assert!(check_elementary(&catalog::inst1()).passed());
    }

    #[test]
    fn inst2_passes_and_flipped_bit_fails() {
        let inst = catalog::inst2();
        assert!(check_elementary(&inst).passed());
        let mut sat: Vec<Vec<Vec<bool>>> = (0..2).map(|x| inst.sat(x).to_vec()).collect();
        // n1 ⊨ t2 although Mod φ(n1) = m1 ⊭ s2
        sat[1][0][1] = true;
        let broken = inst.with_sat(sat).unwrap();
        let phi = inst.sign().arrow_index("phi").unwrap();
        assert_eq!(
            check_elementary(&broken).witness(),
            Some(&ElementaryFailure::Satisfaction {
                arrow: phi,
                model: 0,
                sentence: 1
            })
        );
    }

    #[test]
    fn shape_errors() {
        let inst = catalog::inst1();
        assert!(inst.with_sat(vec![vec![vec![true]]]).is_err());
        assert!(
            ElementaryInstitution::new(inst.models().clone(), inst.sen().clone(), vec![]).is_err()
        );
    }
}
