use super::functor::{compose_functors, FiniteFunctor, SetFunctor};
use crate::error::{Error, Result};
use crate::outcome::Outcome;

/// A transformation `α : F ⇒ G` between parallel functors; component `x`
/// is an arrow `F(x) → G(x)` of the target category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteNatTrans {
    source: FiniteFunctor,
    target: FiniteFunctor,
    components: Vec<usize>,
}

/// A transformation between parallel set functors; component `x` maps
/// `F(x)` into `G(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetNatTrans {
    source: SetFunctor,
    target: SetFunctor,
    components: Vec<Vec<usize>>,
}

/// A naturality square that fails to commute, at an arrow of the source
/// category and, for set functors, at an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityFailure {
    pub arrow: usize,
    pub element: Option<usize>,
}

impl FiniteNatTrans {
    pub fn new(
        source: FiniteFunctor,
        target: FiniteFunctor,
        components: Vec<usize>,
    ) -> Result<Self> {
        if source.source() != target.source() || source.target() != target.target() {
            return Err(Error::MalformedMap(
                "transformation between non-parallel functors".into(),
            ));
        }
        if source.is_contravariant() != target.is_contravariant() {
            return Err(Error::MalformedMap(
                "transformation between functors of different variance".into(),
            ));
        }
        let t = source.target();
        if components.len() != source.source().object_count() {
            return Err(Error::MalformedMap(
                "one component per object is required".into(),
            ));
        }
        for (x, &a) in components.iter().enumerate() {
            if a >= t.arrow_count() || t.dom(a) != source.object(x) || t.cod(a) != target.object(x)
            {
                return Err(Error::MalformedMap(format!(
                    "component at `{}` has wrong endpoints",
                    source.source().objects()[x]
                )));
            }
        }
        Ok(FiniteNatTrans {
            source,
            target,
            components,
        })
    }

    pub fn identity(func: &FiniteFunctor) -> Self {
        let t = func.target();
        FiniteNatTrans {
            source: func.clone(),
            target: func.clone(),
            components: func.object_map().iter().map(|&y| t.identity(y)).collect(),
        }
    }

    pub fn source(&self) -> &FiniteFunctor {
        &self.source
    }

    pub fn target(&self) -> &FiniteFunctor {
        &self.target
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    /// `self · first`, componentwise `self_x ∘ first_x`.
    pub fn vertical(&self, first: &FiniteNatTrans) -> Result<FiniteNatTrans> {
        if first.target != self.source {
            return Err(Error::MalformedMap(
                "transformations are not vertically composable".into(),
            ));
        }
        let t = self.source.target();
        let components = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(&b, &a)| {
                t.compose(b, a)
                    .ok_or_else(|| Error::Malformed("target category lacks a composite".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteNatTrans {
            source: first.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    /// `self F`: the transformation `G∘F ⇒ H∘F` with components
    /// `self_{F(x)}`.
    pub fn whisker(&self, func: &FiniteFunctor) -> Result<FiniteNatTrans> {
        Ok(FiniteNatTrans {
            source: compose_functors(&self.source, func)?,
            target: compose_functors(&self.target, func)?,
            components: func
                .object_map()
                .iter()
                .map(|&y| self.components[y])
                .collect(),
        })
    }
}

pub fn check_nat_trans(alpha: &FiniteNatTrans) -> Outcome<NaturalityFailure> {
    let (f_, g_) = (&alpha.source, &alpha.target);
    let (s, t) = (f_.source(), f_.target());
    for a in 0..s.arrow_count() {
        let (x, y) = (s.dom(a), s.cod(a));
        let (fa, ga) = (f_.arrow(a), g_.arrow(a));
        let (lhs, rhs) = if f_.is_contravariant() {
            (
                t.compose(alpha.components[x], fa),
                t.compose(ga, alpha.components[y]),
            )
        } else {
            (
                t.compose(ga, alpha.components[x]),
                t.compose(alpha.components[y], fa),
            )
        };
        if lhs.is_none() || lhs != rhs {
            return Outcome::Fail(NaturalityFailure {
                arrow: a,
                element: None,
            });
        }
    }
    Outcome::Pass
}

impl SetNatTrans {
    pub fn new(
        source: SetFunctor,
        target: SetFunctor,
        components: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if source.source() != target.source() {
            return Err(Error::MalformedMap(
                "transformation between non-parallel set functors".into(),
            ));
        }
        if source.is_contravariant() != target.is_contravariant() {
            return Err(Error::MalformedMap(
                "transformation between set functors of different variance".into(),
            ));
        }
        if components.len() != source.source().object_count() {
            return Err(Error::MalformedMap(
                "one component per object is required".into(),
            ));
        }
        for (x, c) in components.iter().enumerate() {
            if c.len() != source.set(x).len() || c.iter().any(|&v| v >= target.set(x).len()) {
                return Err(Error::MalformedMap(format!(
                    "component at `{}` does not map between the assigned sets",
                    source.source().objects()[x]
                )));
            }
        }
        Ok(SetNatTrans {
            source,
            target,
            components,
        })
    }

    pub fn identity(func: &SetFunctor) -> Self {
        SetNatTrans {
            source: func.clone(),
            target: func.clone(),
            components: func.sets().iter().map(|s| (0..s.len()).collect()).collect(),
        }
    }

    pub fn source(&self) -> &SetFunctor {
        &self.source
    }

    pub fn target(&self) -> &SetFunctor {
        &self.target
    }

    pub fn component(&self, x: usize) -> &[usize] {
        &self.components[x]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn vertical(&self, first: &SetNatTrans) -> Result<SetNatTrans> {
        if first.target != self.source {
            return Err(Error::MalformedMap(
                "transformations are not vertically composable".into(),
            ));
        }
        Ok(SetNatTrans {
            source: first.source.clone(),
            target: self.target.clone(),
            components: first
                .components
                .iter()
                .zip(&self.components)
                .map(|(a, b)| a.iter().map(|&v| b[v]).collect())
                .collect(),
        })
    }

    pub fn whisker(&self, func: &FiniteFunctor) -> Result<SetNatTrans> {
        Ok(SetNatTrans {
            source: self.source.precompose(func)?,
            target: self.target.precompose(func)?,
            components: func
                .object_map()
                .iter()
                .map(|&y| self.components[y].clone())
                .collect(),
        })
    }
}

pub fn check_set_nat_trans(alpha: &SetNatTrans) -> Outcome<NaturalityFailure> {
    let (f_, g_) = (&alpha.source, &alpha.target);
    let s = f_.source();
    for a in 0..s.arrow_count() {
        // the square runs from the set at the map's domain object `d` to the
        // target set at its codomain object `c`
        let (d, c) = f_.map_endpoints(a);
        for i in 0..f_.set(d).len() {
            let down_then_across = g_.map(a)[alpha.components[d][i]];
            let across_then_down = alpha.components[c][f_.map(a)[i]];
            if down_then_across != across_then_down {
                return Outcome::Fail(NaturalityFailure {
                    arrow: a,
                    element: Some(i),
                });
            }
        }
    }
    Outcome::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{check_functor, FiniteCategory};

    fn chain(n: usize) -> FiniteCategory {
        FiniteCategory::preorder(n, |i, j| i < j)
    }

    fn monotone(c: &FiniteCategory, d: &FiniteCategory, m: &[usize]) -> FiniteFunctor {
        let arrows = (0..c.arrow_count())
            .map(|a| d.hom(m[c.dom(a)], m[c.cod(a)])[0])
            .collect();
        FiniteFunctor::new(c.clone(), d.clone(), m.to_vec(), arrows, false).unwrap()
    }

    fn between(f: &FiniteFunctor, g: &FiniteFunctor) -> FiniteNatTrans {
        let t = f.target();
        let comps = (0..f.source().object_count())
            .map(|x| t.hom(f.object(x), g.object(x))[0])
            .collect();
        FiniteNatTrans::new(f.clone(), g.clone(), comps).unwrap()
    }

    #[test]
    fn preorder_transformations() {
        let (c, d) = (chain(2), chain(3));
        let f = monotone(&c, &d, &[0, 1]);
        let g = monotone(&c, &d, &[1, 2]);
        let h = monotone(&c, &d, &[2, 2]);
        assert!(check_functor(&f).passed() && check_functor(&h).passed());
        let (a, b) = (between(&f, &g), between(&g, &h));
        assert!(check_nat_trans(&a).passed());
        let ba = b.vertical(&a).unwrap();
        assert_eq!(ba, between(&f, &h));
        assert!(check_nat_trans(&ba).passed());
        assert_eq!(FiniteNatTrans::identity(&g).vertical(&a).unwrap(), a);
    }

    #[test]
    fn whiskering() {
        let (b, c, d) = (chain(2), chain(2), chain(3));
        let k = monotone(&b, &c, &[1, 1]);
        let f = monotone(&c, &d, &[0, 1]);
        let g = monotone(&c, &d, &[1, 2]);
        let a = between(&f, &g);
        let w = a.whisker(&k).unwrap();
        // components are those of a at the images of k
        assert_eq!(w.components(), &[a.components()[1], a.components()[1]]);
        assert!(check_nat_trans(&w).passed());
        assert_eq!(
            FiniteNatTrans::identity(&f).whisker(&k).unwrap(),
            FiniteNatTrans::identity(&compose_functors(&f, &k).unwrap())
        );
        assert_eq!(a.whisker(&FiniteFunctor::identity(&c)).unwrap(), a);
    }

    #[test]
    fn set_transformations() {
        let c = FiniteCategory::arrow("S1", "S2", "phi").unwrap();
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let f = SetFunctor::new(
            c.clone(),
            vec![s(&["a", "b"]), s(&["c"])],
            vec![vec![0, 1], vec![0], vec![0, 0]],
            false,
        )
        .unwrap();
        let g = SetFunctor::new(
            c.clone(),
            vec![s(&["x"]), s(&["y", "z"])],
            vec![vec![0], vec![0, 1], vec![1]],
            false,
        )
        .unwrap();
        let good = SetNatTrans::new(f.clone(), g.clone(), vec![vec![0, 0], vec![1]]).unwrap();
        assert!(check_set_nat_trans(&good).passed());
        let bad = SetNatTrans::new(f.clone(), g, vec![vec![0, 0], vec![0]]).unwrap();
        assert_eq!(
            check_set_nat_trans(&bad).witness(),
            Some(&NaturalityFailure {
                arrow: 2,
                element: Some(0)
            })
        );
        let id = SetNatTrans::identity(&f);
        assert_eq!(good.vertical(&id).unwrap(), good);
    }

    #[test]
    fn contravariant_set_naturality() {
        let c = FiniteCategory::arrow("S1", "S2", "phi").unwrap();
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        // Mod-like: phi sends models at S2 to models at S1
        let m = SetFunctor::new(
            c.clone(),
            vec![s(&["m"]), s(&["n1", "n2"])],
            vec![vec![0], vec![0, 1], vec![0, 0]],
            true,
        )
        .unwrap();
        let m2 = SetFunctor::new(
            c.clone(),
            vec![s(&["u", "v"]), s(&["w"])],
            vec![vec![0, 1], vec![0], vec![1]],
            true,
        )
        .unwrap();
        let beta = SetNatTrans::new(m.clone(), m2.clone(), vec![vec![1], vec![0, 0]]).unwrap();
        assert!(check_set_nat_trans(&beta).passed());
        let broken = SetNatTrans::new(m, m2, vec![vec![0], vec![0, 0]]).unwrap();
        assert!(!check_set_nat_trans(&broken).passed());
    }
}
