use std::fmt;

use super::category::FiniteCategory;
use crate::error::{Error, Result};
use crate::outcome::Outcome;

/// A functor between finite categories. A contravariant functor sends
/// `f : X → Y` to an arrow `F(Y) → F(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteFunctor {
    source: FiniteCategory,
    target: FiniteCategory,
    objects: Vec<usize>,
    arrows: Vec<usize>,
    contravariant: bool,
}

/// A violated functor law, naming source arrows and objects by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorFailure {
    Endpoints { arrow: usize },
    Identity { object: usize },
    Composition { g: usize, f: usize },
}

impl FiniteFunctor {
    pub fn new(
        source: FiniteCategory,
        target: FiniteCategory,
        objects: Vec<usize>,
        arrows: Vec<usize>,
        contravariant: bool,
    ) -> Result<Self> {
        if objects.len() != source.object_count()
            || objects.iter().any(|&o| o >= target.object_count())
        {
            return Err(Error::MalformedMap(
                "object map does not fit the categories".into(),
            ));
        }
        if arrows.len() != source.arrow_count() || arrows.iter().any(|&a| a >= target.arrow_count())
        {
            return Err(Error::MalformedMap(
                "arrow map does not fit the categories".into(),
            ));
        }
        Ok(FiniteFunctor {
            source,
            target,
            objects,
            arrows,
            contravariant,
        })
    }

    /// Builds the maps from labels: objects by name, arrows by name.
    pub fn from_names<S: AsRef<str>>(
        source: FiniteCategory,
        target: FiniteCategory,
        objects: &[(S, S)],
        arrows: &[(S, S)],
        contravariant: bool,
    ) -> Result<Self> {
        let mut object_map = vec![None; source.object_count()];
        for (x, y) in objects {
            let i = lookup(source.object_index(x.as_ref()), x.as_ref())?;
            object_map[i] = Some(lookup(target.object_index(y.as_ref()), y.as_ref())?);
        }
        let mut arrow_map: Vec<Option<usize>> = vec![None; source.arrow_count()];
        for (f, g) in arrows {
            let i = lookup(source.arrow_index(f.as_ref()), f.as_ref())?;
            arrow_map[i] = Some(lookup(target.arrow_index(g.as_ref()), g.as_ref())?);
        }
        let objects = object_map
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| {
                    Error::MalformedMap(format!("object `{}` is not mapped", source.objects()[i]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        // identities default to identities
        let arrows = arrow_map
            .into_iter()
            .enumerate()
            .map(|(i, a)| match a {
                Some(a) => Ok(a),
                None if source.is_identity(i) => Ok(target.identity(objects[source.dom(i)])),
                None => Err(Error::MalformedMap(format!(
                    "arrow `{}` is not mapped",
                    source.arrow_name(i)
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, objects, arrows, contravariant)
    }

    pub fn identity(c: &FiniteCategory) -> Self {
        FiniteFunctor {
            source: c.clone(),
            target: c.clone(),
            objects: (0..c.object_count()).collect(),
            arrows: (0..c.arrow_count()).collect(),
            contravariant: false,
        }
    }

    pub fn source(&self) -> &FiniteCategory {
        &self.source
    }

    pub fn target(&self) -> &FiniteCategory {
        &self.target
    }

    pub fn is_contravariant(&self) -> bool {
        self.contravariant
    }

    pub fn object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn arrow(&self, f: usize) -> usize {
        self.arrows[f]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn arrow_map(&self) -> &[usize] {
        &self.arrows
    }
}

fn lookup(found: Option<usize>, name: &str) -> Result<usize> {
    found.ok_or_else(|| Error::MalformedMap(format!("unknown name `{name}`")))
}

impl fmt::Display for FiniteFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (s, t) = (&self.source, &self.target);
        for (x, &y) in self.objects.iter().enumerate() {
            writeln!(f, "{} |-> {}", s.objects()[x], t.objects()[y])?;
        }
        for (a, &b) in self.arrows.iter().enumerate() {
            let (d, c) = (s.dom(a), s.cod(a));
            write!(
                f,
                "{}: {} -> {} |-> {}",
                s.arrow_name(a),
                s.objects()[d],
                s.objects()[c],
                t.arrow_name(b)
            )?;
            if self.contravariant {
                // the same assignment read as a covariant functor out of the opposite category
                write!(f, "  (op: {} -> {})", s.objects()[c], s.objects()[d])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn check_functor(func: &FiniteFunctor) -> Outcome<FunctorFailure> {
    let (s, t) = (&func.source, &func.target);
    for a in 0..s.arrow_count() {
        let (mut d, mut c) = (func.object(s.dom(a)), func.object(s.cod(a)));
        if func.contravariant {
            std::mem::swap(&mut d, &mut c);
        }
        let b = func.arrow(a);
        if t.dom(b) != d || t.cod(b) != c {
            return Outcome::Fail(FunctorFailure::Endpoints { arrow: a });
        }
    }
    for x in 0..s.object_count() {
        if func.arrow(s.identity(x)) != t.identity(func.object(x)) {
            return Outcome::Fail(FunctorFailure::Identity { object: x });
        }
    }
    for (g, f) in s.composable_pairs() {
        let Some(gf) = s.compose(g, f) else { continue };
        let image = if func.contravariant {
            t.compose(func.arrow(f), func.arrow(g))
        } else {
            t.compose(func.arrow(g), func.arrow(f))
        };
        if image != Some(func.arrow(gf)) {
            return Outcome::Fail(FunctorFailure::Composition { g, f });
        }
    }
    Outcome::Pass
}

/// `second ∘ first`; variances multiply.
pub fn compose_functors(second: &FiniteFunctor, first: &FiniteFunctor) -> Result<FiniteFunctor> {
    if first.target != second.source {
        return Err(Error::MalformedMap("functors are not composable".into()));
    }
    Ok(FiniteFunctor {
        source: first.source.clone(),
        target: second.target.clone(),
        objects: first.objects.iter().map(|&y| second.objects[y]).collect(),
        arrows: first.arrows.iter().map(|&b| second.arrows[b]).collect(),
        contravariant: first.contravariant != second.contravariant,
    })
}

/// A functor into finite sets. Element `i` of the set at object `x` is
/// labelled `sets[x][i]`; `maps[f][i]` is the image of element `i` of the
/// map's domain, which is `F(dom f)` for covariant and `F(cod f)` for
/// contravariant functors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFunctor {
    source: FiniteCategory,
    sets: Vec<Vec<String>>,
    maps: Vec<Vec<usize>>,
    contravariant: bool,
}

impl SetFunctor {
    pub fn new(
        source: FiniteCategory,
        sets: Vec<Vec<String>>,
        maps: Vec<Vec<usize>>,
        contravariant: bool,
    ) -> Result<Self> {
        if sets.len() != source.object_count() || maps.len() != source.arrow_count() {
            return Err(Error::MalformedMap(
                "set functor does not cover the category".into(),
            ));
        }
        let func = SetFunctor {
            source,
            sets,
            maps,
            contravariant,
        };
        for f in 0..func.maps.len() {
            let (d, c) = func.map_endpoints(f);
            if func.maps[f].len() != func.sets[d].len()
                || func.maps[f].iter().any(|&v| v >= func.sets[c].len())
            {
                return Err(Error::MalformedMap(format!(
                    "map for `{}` does not run between the assigned sets",
                    func.source.arrow_name(f)
                )));
            }
        }
        Ok(func)
    }

    pub fn source(&self) -> &FiniteCategory {
        &self.source
    }

    pub fn is_contravariant(&self) -> bool {
        self.contravariant
    }

    pub fn set(&self, x: usize) -> &[String] {
        &self.sets[x]
    }

    pub fn sets(&self) -> &[Vec<String>] {
        &self.sets
    }

    pub fn map(&self, f: usize) -> &[usize] {
        &self.maps[f]
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    /// The objects whose sets are the domain and codomain of `F(f)`.
    pub fn map_endpoints(&self, f: usize) -> (usize, usize) {
        let (d, c) = (self.source.dom(f), self.source.cod(f));
        if self.contravariant {
            (c, d)
        } else {
            (d, c)
        }
    }

    /// `self ∘ func`, a set functor on `func`'s source.
    pub fn precompose(&self, func: &FiniteFunctor) -> Result<SetFunctor> {
        if func.target() != &self.source {
            return Err(Error::MalformedMap(
                "functor does not land in the set functor's domain".into(),
            ));
        }
        Ok(SetFunctor {
            source: func.source().clone(),
            sets: func
                .object_map()
                .iter()
                .map(|&y| self.sets[y].clone())
                .collect(),
            maps: func
                .arrow_map()
                .iter()
                .map(|&b| self.maps[b].clone())
                .collect(),
            contravariant: self.contravariant != func.is_contravariant(),
        })
    }
}

pub fn check_set_functor(func: &SetFunctor) -> Outcome<FunctorFailure> {
    let s = &func.source;
    for x in 0..s.object_count() {
        let id = func.map(s.identity(x));
        if id.iter().enumerate().any(|(i, &v)| i != v) {
            return Outcome::Fail(FunctorFailure::Identity { object: x });
        }
    }
    for (g, f) in s.composable_pairs() {
        let Some(gf) = s.compose(g, f) else { continue };
        let (first, second) = if func.contravariant { (g, f) } else { (f, g) };
        let composite: Vec<usize> = func
            .map(first)
            .iter()
            .map(|&v| func.map(second)[v])
            .collect();
        if composite != func.map(gf) {
            return Outcome::Fail(FunctorFailure::Composition { g, f });
        }
    }
    Outcome::Pass
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow_cat() -> FiniteCategory {
        FiniteCategory::arrow("S1", "S2", "phi").unwrap()
    }

    #[test]
    fn identity_functor_composes_neutrally() {
        let c = FiniteCategory::preorder(3, |i, j| i < j);
        let d = FiniteCategory::preorder(2, |i, j| i < j);
        let f = FiniteFunctor::from_names(
            c.clone(),
            d.clone(),
            &[("0", "0"), ("1", "0"), ("2", "1")],
            &[("0<=1", "id_0"), ("0<=2", "0<=1"), ("1<=2", "0<=1")],
            false,
        )
        .unwrap();
        assert!(check_functor(&f).passed());
        assert_eq!(
            compose_functors(&f, &FiniteFunctor::identity(&c)).unwrap(),
            f
        );
        assert_eq!(
            compose_functors(&FiniteFunctor::identity(&d), &f).unwrap(),
            f
        );
    }

    #[test]
    fn contravariant_functor_to_opposite() {
        let c = arrow_cat();
        let flip =
            FiniteFunctor::new(c.clone(), c.opposite(), vec![0, 1], vec![0, 1, 2], true).unwrap();
        // identity assignment into the opposite is contravariant
        assert!(check_functor(&flip).passed());
        let twice = compose_functors(
            &flip,
            &FiniteFunctor::new(c.opposite(), c.clone(), vec![0, 1], vec![0, 1, 2], true).unwrap(),
        )
        .unwrap();
        assert!(!twice.is_contravariant());
        assert!(check_functor(&twice).passed());
        assert!(flip.to_string().contains("op:"));
    }

    #[test]
    fn endpoint_violation() {
        let c = arrow_cat();
        let f = FiniteFunctor::new(c.clone(), c.clone(), vec![1, 0], vec![1, 0, 2], false).unwrap();
        assert_eq!(
            check_functor(&f).witness(),
            Some(&FunctorFailure::Endpoints { arrow: 2 })
        );
    }

    #[test]
    fn sen_fixture() {
        let c = arrow_cat();
        let sen = SetFunctor::new(
            c.clone(),
            vec![
                vec!["s1".into(), "s2".into()],
                vec!["t1".into(), "t2".into(), "t3".into()],
            ],
            vec![vec![0, 1], vec![0, 1, 2], vec![0, 2]],
            false,
        )
        .unwrap();
        assert!(check_set_functor(&sen).passed());
        let bad = SetFunctor::new(
            c.clone(),
            vec![vec!["s1".into(), "s2".into()], vec!["t".into()]],
            vec![vec![1, 0], vec![0], vec![0, 0]],
            false,
        )
        .unwrap();
        assert_eq!(
            check_set_functor(&bad).witness(),
            Some(&FunctorFailure::Identity { object: 0 })
        );
        // a contravariant map must run from the codomain's set
        assert!(SetFunctor::new(
            c,
            vec![vec!["a".into()], vec!["b".into(), "c".into()]],
            vec![vec![0], vec![0, 1], vec![0]],
            true
        )
        .is_err());
    }

    #[test]
    fn precompose_with_identity() {
        let c = arrow_cat();
        let mods = SetFunctor::new(
            c.clone(),
            vec![vec!["m".into()], vec!["n1".into(), "n2".into()]],
            vec![vec![0], vec![0, 1], vec![0, 0]],
            true,
        )
        .unwrap();
        assert!(check_set_functor(&mods).passed());
        assert_eq!(mods.precompose(&FiniteFunctor::identity(&c)).unwrap(), mods);
    }
}
