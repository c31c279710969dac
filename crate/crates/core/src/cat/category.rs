use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::outcome::Outcome;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    table: Vec<Option<usize>>,
}

/// A violated category law, naming arrows by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryFailure {
    /// The identity of `object` is not an endo-arrow on it.
    IdentityEndpoints { object: usize },
    /// `g ∘ f` is undefined though `cod f = dom g`.
    Missing { g: usize, f: usize },
    /// `g ∘ f` is defined though `cod f ≠ dom g`.
    Spurious { g: usize, f: usize },
    /// `g ∘ f = h` but `h` does not run from `dom f` to `cod g`.
    Misdirected { g: usize, f: usize, h: usize },
    /// `id ∘ f ≠ f` or `f ∘ id ≠ f`.
    Identity { object: usize, arrow: usize },
    /// `(h ∘ g) ∘ f ≠ h ∘ (g ∘ f)`.
    Associativity { h: usize, g: usize, f: usize },
}

impl FiniteCategory {
    /// Builds a category from object labels, named non-identity arrows
    /// `(name, dom, cod)` and declared composites `(g, f, g∘f)`.
    ///
    /// Identities are added first, one per object, named `id_X`; composites
    /// with identities are filled in. Undeclared composites stay undefined
    /// and are reported by [`check_category`].
    pub fn new<S: AsRef<str>>(
        objects: &[S],
        arrows: &[(S, S, S)],
        composites: &[(S, S, S)],
    ) -> Result<Self> {
        let objects: Vec<String> = objects.iter().map(|o| o.as_ref().to_string()).collect();
        let mut object_index = BTreeMap::new();
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate object `{o}`")));
            }
        }
        let find_object = |name: &str| {
            object_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Malformed(format!("unknown object `{name}`")))
        };
        let mut all: Vec<Arrow> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Arrow {
                name: format!("id_{o}"),
                dom: i,
                cod: i,
            })
            .collect();
        for (name, dom, cod) in arrows {
            all.push(Arrow {
                name: name.as_ref().to_string(),
                dom: find_object(dom.as_ref())?,
                cod: find_object(cod.as_ref())?,
            });
        }
        let mut arrow_index = BTreeMap::new();
        for (i, a) in all.iter().enumerate() {
            if arrow_index.insert(a.name.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate arrow `{}`", a.name)));
            }
        }
        let n = all.len();
        let identities: Vec<usize> = (0..objects.len()).collect();
        let mut table = vec![None; n * n];
        for (f, a) in all.iter().enumerate() {
            table[a.cod * n + f] = Some(f);
            table[f * n + a.dom] = Some(f);
        }
        let find_arrow = |name: &str| {
            arrow_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Malformed(format!("unknown arrow `{name}`")))
        };
        for (g, f, h) in composites {
            let (g, f, h) = (
                find_arrow(g.as_ref())?,
                find_arrow(f.as_ref())?,
                find_arrow(h.as_ref())?,
            );
            if all[f].cod != all[g].dom {
                return Err(Error::Malformed(format!(
                    "composite `{} after {}` declared for non-composable arrows",
                    all[g].name, all[f].name
                )));
            }
            match table[g * n + f] {
                Some(old) if old != h => {
                    return Err(Error::Malformed(format!(
                        "conflicting composites for `{} after {}`",
                        all[g].name, all[f].name
                    )))
                }
                _ => table[g * n + f] = Some(h),
            }
        }
        Ok(FiniteCategory {
            objects,
            arrows: all,
            identities,
            table,
        })
    }

    /// The one-object, one-arrow category.
    pub fn single(object: &str) -> Self {
        Self::new(&[object], &[], &[]).expect("well formed")
    }

    /// Only identity arrows.
    pub fn discrete<S: AsRef<str>>(objects: &[S]) -> Result<Self> {
        Self::new(objects, &[], &[])
    }

    /// Two objects and one arrow `name : from → to`.
    pub fn arrow(from: &str, to: &str, name: &str) -> Result<Self> {
        Self::new(&[from, to], &[(name, from, to)], &[])
    }

    /// The preorder category on `0..n` generated by `leq`, which is closed
    /// reflexively and transitively first. Arrows are named `i<=j`.
    pub fn preorder(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut rel: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| i == j || leq(i, j)).collect())
            .collect();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let name = |i: usize, j: usize| format!("{i}<={j}");
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && rel[i][j] {
                    arrows.push((name(i, j), i.to_string(), j.to_string()));
                }
            }
        }
        let mut composites = Vec::new();
        for (f, a, b) in &arrows {
            for (g, c, d) in &arrows {
                if b == c && a != d {
                    composites.push((
                        g.clone(),
                        f.clone(),
                        name(a.parse().unwrap(), d.parse().unwrap()),
                    ));
                }
                if b == c && a == d {
                    composites.push((g.clone(), f.clone(), format!("id_{a}")));
                }
            }
        }
        Self::new(&objects, &arrows, &composites).expect("preorders are well formed")
    }

    /// Assembles a category from raw parts without checking any law.
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        table: Vec<Option<usize>>,
    ) -> Result<Self> {
        let n = arrows.len();
        if identities.len() != objects.len() || identities.iter().any(|&i| i >= n) {
            return Err(Error::Malformed(
                "identity assignment does not fit the arrows".into(),
            ));
        }
        if arrows
            .iter()
            .any(|a| a.dom >= objects.len() || a.cod >= objects.len())
        {
            return Err(Error::Malformed("arrow endpoint out of range".into()));
        }
        if table.len() != n * n || table.iter().flatten().any(|&h| h >= n) {
            return Err(Error::Malformed(
                "composition table does not fit the arrows".into(),
            ));
        }
        Ok(FiniteCategory {
            objects,
            arrows,
            identities,
            table,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrow_name(&self, f: usize) -> &str {
        &self.arrows[f].name
    }

    pub fn dom(&self, f: usize) -> usize {
        self.arrows[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.arrows[f].cod
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities.contains(&f)
    }

    /// `g ∘ f`, when defined.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table[g * self.arrows.len() + f]
    }

    /// Arrows `x → y` in index order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&f| self.arrows[f].dom == x && self.arrows[f].cod == y)
            .collect()
    }

    /// Composable pairs `(g, f)` with `cod f = dom g`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.arrows.len();
        (0..n).flat_map(move |g| {
            (0..n)
                .filter(move |&f| self.cod(f) == self.dom(g))
                .map(move |f| (g, f))
        })
    }

    /// Same objects and arrows with every arrow reversed.
    pub fn opposite(&self) -> Self {
        let n = self.arrows.len();
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                dom: a.cod,
                cod: a.dom,
            })
            .collect();
        let mut table = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                table[g * n + f] = self.table[f * n + g];
            }
        }
        FiniteCategory {
            objects: self.objects.clone(),
            arrows,
            identities: self.identities.clone(),
            table,
        }
    }
}

impl fmt::Display for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "objects: {}", self.objects.join(", "))?;
        for a in &self.arrows {
            writeln!(
                f,
                "{}: {} -> {}",
                a.name, self.objects[a.dom], self.objects[a.cod]
            )?;
        }
        for (g, h) in self.composable_pairs() {
            if let Some(k) = self.compose(g, h) {
                if !self.is_identity(g) && !self.is_identity(h) {
                    writeln!(
                        f,
                        "{} after {} = {}",
                        self.arrows[g].name, self.arrows[h].name, self.arrows[k].name
                    )?;
                }
            }
        }
        Ok(())
    }
}

pub fn check_category(c: &FiniteCategory) -> Outcome<CategoryFailure> {
    Outcome::from_witness(category_failure(c))
}

fn category_failure(c: &FiniteCategory) -> Option<CategoryFailure> {
    let n = c.arrow_count();
    for (object, &id) in c.identities.iter().enumerate() {
        if c.dom(id) != object || c.cod(id) != object {
            return Some(CategoryFailure::IdentityEndpoints { object });
        }
    }
    for g in 0..n {
        for f in 0..n {
            let composable = c.cod(f) == c.dom(g);
            match (composable, c.compose(g, f)) {
                (true, None) => return Some(CategoryFailure::Missing { g, f }),
                (false, Some(_)) => return Some(CategoryFailure::Spurious { g, f }),
                (true, Some(h)) if c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g) => {
                    return Some(CategoryFailure::Misdirected { g, f, h })
                }
                _ => {}
            }
        }
    }
    for arrow in 0..n {
        let (d, e) = (c.identity(c.dom(arrow)), c.identity(c.cod(arrow)));
        if c.compose(arrow, d) != Some(arrow) {
            return Some(CategoryFailure::Identity {
                object: c.dom(arrow),
                arrow,
            });
        }
        if c.compose(e, arrow) != Some(arrow) {
            return Some(CategoryFailure::Identity {
                object: c.cod(arrow),
                arrow,
            });
        }
    }
    for (g, f) in c.composable_pairs() {
        let gf = c.compose(g, f).expect("checked above");
        for h in (0..n).filter(|&h| c.dom(h) == c.cod(g)) {
            let hg = c.compose(h, g).expect("checked above");
            if c.compose(hg, f) != c.compose(h, gf) {
                return Some(CategoryFailure::Associativity { h, g, f });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_object() {
        let c = FiniteCategory::single("S");
        assert_eq!(c.arrow_count(), 1);
        assert!(check_category(&c).passed());
    }

    #[test]
    fn one_arrow() {
        let c = FiniteCategory::arrow("S1", "S2", "phi").unwrap();
        assert!(check_category(&c).passed());
        assert_eq!(c.hom(0, 1), vec![2]);
        let op = c.opposite();
        assert!(check_category(&op).passed());
        assert_eq!(op.hom(1, 0), vec![2]);
        assert_eq!(op.opposite(), c);
    }

    #[test]
    fn misdirected_composite() {
        // f : A → B, g : B → C, declared g ∘ f = f
        let c = FiniteCategory::new(
            &["A", "B", "C"],
            &[("f", "A", "B"), ("g", "B", "C")],
            &[("g", "f", "f")],
        )
        .unwrap();
        let (f, g) = (c.arrow_index("f").unwrap(), c.arrow_index("g").unwrap());
        assert_eq!(
            check_category(&c).witness(),
            Some(&CategoryFailure::Misdirected { g, f, h: f })
        );
    }

    #[test]
    fn missing_composite() {
        let c = FiniteCategory::new(&["A", "B", "C"], &[("f", "A", "B"), ("g", "B", "C")], &[])
            .unwrap();
        assert!(matches!(
            check_category(&c).witness(),
            Some(CategoryFailure::Missing { .. })
        ));
    }

    #[test]
    fn non_associative_monoid() {
        // a one-object category with a, b where a∘a = b, a∘b = a, b∘a = b, b∘b = b
        let c = FiniteCategory::new(
            &["*"],
            &[("a", "*", "*"), ("b", "*", "*")],
            &[
                ("a", "a", "b"),
                ("a", "b", "a"),
                ("b", "a", "b"),
                ("b", "b", "b"),
            ],
        )
        .unwrap();
        assert!(matches!(
            check_category(&c).witness(),
            Some(CategoryFailure::Associativity { .. })
        ));
    }

    #[test]
    fn preorders_are_categories() {
        let c = FiniteCategory::preorder(4, |i, j| j == i + 1);
        assert_eq!(c.arrow_count(), 10);
        assert!(check_category(&c).passed());
        assert!(check_category(&c.opposite()).passed());
    }

    #[test]
    fn bad_declarations() {
        assert!(FiniteCategory::new(&["A", "A"], &[], &[]).is_err());
        assert!(FiniteCategory::new(&["A"], &[("f", "A", "B")], &[]).is_err());
        assert!(FiniteCategory::new(&["A", "B"], &[("f", "A", "B")], &[("f", "f", "f")]).is_err());
    }
}
