//! Finite algebras given by explicit operation tables.
//!
//! Elements are the indices `0..n`; every operation of arity `k` is a total
//! table of `n^k` entries in row-major order (the last argument varies
//! fastest). Infinitary joins and meets are encoded by the binary symbols
//! `join`/`meet` together with the nullary `bot`/`top`; on a finite carrier
//! these determine every finite join and meet.

mod construct;
mod hom;
mod iso;
mod variety;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use construct::{
    coequalizer_check, image, kernel_pair, product, projections, CoequalizerFailure,
    CoequalizerReport, Congruence, Image,
};
pub use hom::{enumerate_homs, is_homomorphism, HomFailure, Homomorphism};
pub use iso::{all_isomorphisms, find_isomorphism, isomorphic};
pub use variety::{check_laws, require_laws, Law, LawFailure, LawReport, Term, Variety};

/// Largest arity accepted by [`Signature::new`].
pub const MAX_ARITY: usize = 3;

pub const JOIN: &str = "join";
pub const MEET: &str = "meet";
pub const BOT: &str = "bot";
pub const TOP: &str = "top";
pub const NEG: &str = "neg";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

impl Symbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Symbol {
            name: name.into(),
            arity,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// A finite list of operation symbols, kept sorted by name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new(mut symbols: Vec<Symbol>) -> Result<Self> {
        symbols.sort();
        for pair in symbols.windows(2) {
            if pair[0].name == pair[1].name {
                return Err(Error::Malformed(format!(
                    "duplicate operation symbol `{}`",
                    pair[0].name
                )));
            }
        }
        if let Some(s) = symbols.iter().find(|s| s.arity > MAX_ARITY) {
            return Err(Error::Malformed(format!(
                "symbol `{}` has arity {} above the bound {MAX_ARITY}",
                s.name, s.arity
            )));
        }
        Ok(Signature { symbols })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn get(&self, name: &str) -> Option<&Symbol> {
        self.symbols.iter().find(|s| s.name == name)
    }

    /// Checks that every symbol of `required` occurs here with the same arity.
    pub fn require(&self, required: &[Symbol]) -> Result<()> {
        for r in required {
            match self.get(&r.name) {
                Some(s) if s.arity == r.arity => {}
                _ => return Err(Error::SignatureMismatch(r.name.clone())),
            }
        }
        Ok(())
    }

    /// Errors with the first symbol on which the two signatures disagree.
    pub fn ensure_same(&self, other: &Signature) -> Result<()> {
        if self == other {
            return Ok(());
        }
        let culprit = self
            .symbols
            .iter()
            .find(|s| !other.symbols.contains(s))
            .or_else(|| other.symbols.iter().find(|s| !self.symbols.contains(s)))
            .map(|s| s.name.clone())
            .unwrap_or_default();
        Err(Error::SignatureMismatch(culprit))
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct AlgebraData {
    signature: Signature,
    labels: Vec<String>,
    tables: Vec<Vec<usize>>,
}

/// A finite Ω-algebra: a labelled carrier `0..n` with one total table per
/// symbol. Cloning is cheap; the tables are shared.
#[derive(Clone, Eq)]
pub struct FiniteAlgebra(Arc<AlgebraData>);

impl std::hash::Hash for FiniteAlgebra {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAlgebra")
            .field("labels", &self.0.labels)
            .field("signature", &self.0.signature.symbols)
            .finish()
    }
}

/// Index of a tuple inside a row-major table over a carrier of size `n`.
pub(crate) fn tuple_index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

/// Decodes a table index back into its argument tuple.
pub(crate) fn index_tuple(n: usize, arity: usize, mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    out
}

/// All tuples of length `arity` over `0..n`, in lexicographic order.
pub fn all_tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = n.checked_pow(arity as u32).unwrap_or(0);
    (0..count).map(move |i| index_tuple(n, arity, i))
}

impl FiniteAlgebra {
    /// Builds an algebra from labels and one table per symbol.
    pub fn new(labels: Vec<String>, ops: Vec<(Symbol, Vec<usize>)>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Malformed(
                "carrier must have at least one element".into(),
            ));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Malformed(format!("duplicate element label `{l}`")));
            }
        }
        let mut ops = ops;
        ops.sort_by(|a, b| a.0.cmp(&b.0));
        let signature = Signature::new(ops.iter().map(|(s, _)| s.clone()).collect())?;
        let mut tables = Vec::with_capacity(ops.len());
        for (sym, table) in ops {
            let expected = n.pow(sym.arity as u32);
            if table.len() != expected {
                return Err(Error::Malformed(format!(
                    "table of `{sym}` has {} entries, expected {expected}",
                    table.len()
                )));
            }
            if let Some(bad) = table.iter().find(|&&v| v >= n) {
                return Err(Error::Malformed(format!(
                    "table of `{sym}` contains out-of-range element {bad}"
                )));
            }
            tables.push(table);
        }
        Ok(FiniteAlgebra(Arc::new(AlgebraData {
            signature,
            labels,
            tables,
        })))
    }

    /// Builds an algebra by evaluating `op(symbol, args)` on every tuple.
    pub fn from_fn(
        labels: Vec<String>,
        signature: &Signature,
        mut op: impl FnMut(&Symbol, &[usize]) -> usize,
    ) -> Result<Self> {
        let n = labels.len();
        let ops = signature
            .symbols()
            .iter()
            .map(|s| {
                let table = all_tuples(n, s.arity).map(|t| op(s, &t)).collect();
                (s.clone(), table)
            })
            .collect();
        Self::new(labels, ops)
    }

    /// Labels `0..n` as decimal strings.
    pub fn numbered_labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    pub fn signature(&self) -> &Signature {
        &self.0.signature
    }

    pub fn size(&self) -> usize {
        self.0.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, element: usize) -> &str {
        &self.0.labels[element]
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.0.labels.iter().position(|l| l == label)
    }

    pub fn table(&self, symbol: usize) -> &[usize] {
        &self.0.tables[symbol]
    }

    /// Applies the symbol at position `symbol` of the signature.
    pub fn apply(&self, symbol: usize, args: &[usize]) -> usize {
        self.0.tables[symbol][tuple_index(self.size(), args)]
    }

    /// Applies an operation by name.
    pub fn op(&self, name: &str, args: &[usize]) -> Option<usize> {
        let idx = self.signature().index_of(name)?;
        if self.signature().symbols()[idx].arity != args.len() {
            return None;
        }
        Some(self.apply(idx, args))
    }

    pub fn has(&self, name: &str) -> bool {
        self.signature().index_of(name).is_some()
    }

    /// Same tables under new labels.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size() {
            return Err(Error::Malformed(
                "relabelling changes the carrier size".into(),
            ));
        }
        let ops = self
            .signature()
            .symbols()
            .iter()
            .cloned()
            .zip(self.0.tables.iter().cloned())
            .collect();
        Self::new(labels, ops)
    }

    /// Least subset containing `seed` and closed under every operation.
    ///
    /// Nullary operations are always included. Worklist fixpoint; the result
    /// is sorted.
    pub fn generate_subalgebra(&self, seed: &[usize]) -> Result<Vec<usize>> {
        let n = self.size();
        if let Some(&bad) = seed.iter().find(|&&e| e >= n) {
            return Err(Error::Malformed(format!(
                "seed element {bad} is out of range"
            )));
        }
        let mut member = vec![false; n];
        let mut members: Vec<usize> = Vec::new();
        let mut queue: Vec<usize> = Vec::new();
        let mut push = |e: usize, members: &mut Vec<usize>, queue: &mut Vec<usize>| {
            if !member[e] {
                member[e] = true;
                members.push(e);
                queue.push(e);
            }
        };
        for (i, s) in self.signature().symbols().iter().enumerate() {
            if s.arity == 0 {
                push(self.apply(i, &[]), &mut members, &mut queue);
            }
        }
        for &e in seed {
            push(e, &mut members, &mut queue);
        }
        while let Some(new) = queue.pop() {
            for (i, s) in self.signature().symbols().iter().enumerate() {
                if s.arity == 0 {
                    continue;
                }
                // every tuple over the current members that mentions `new`
                let snapshot = members.clone();
                for args in all_tuples(snapshot.len(), s.arity) {
                    let args: Vec<usize> = args.iter().map(|&k| snapshot[k]).collect();
                    if args.contains(&new) {
                        push(self.apply(i, &args), &mut members, &mut queue);
                    }
                }
            }
        }
        members.sort_unstable();
        Ok(members)
    }

    /// Whether `elements` is closed under all operations (nullaries included).
    pub fn is_closed(&self, elements: &[usize]) -> bool {
        let mut member = vec![false; self.size()];
        for &e in elements {
            if e >= self.size() {
                return false;
            }
            member[e] = true;
        }
        self.signature().symbols().iter().enumerate().all(|(i, s)| {
            all_tuples(elements.len(), s.arity).all(|t| {
                let args: Vec<usize> = t.iter().map(|&k| elements[k]).collect();
                member[self.apply(i, &args)]
            })
        })
    }

    /// The subalgebra on a closed subset, elements renumbered in sorted order.
    pub fn restrict(&self, elements: &[usize]) -> Result<Self> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.is_empty() || !self.is_closed(&elems) {
            return Err(Error::Malformed(
                "subset is not closed under the operations".into(),
            ));
        }
        let pos = |e: usize| elems.binary_search(&e).expect("closed subset");
        let labels = elems.iter().map(|&e| self.label(e).to_string()).collect();
        let sig = self.signature().clone();
        Self::from_fn(labels, &sig, |s, args| {
            let idx = sig.index_of(&s.name).expect("same signature");
            let outer: Vec<usize> = args.iter().map(|&a| elems[a]).collect();
            pos(self.apply(idx, &outer))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn rejects_malformed_tables() {
        let err =
            FiniteAlgebra::new(vec!["a".into()], vec![(Symbol::new("f", 1), vec![1])]).unwrap_err();
        assert!(matches!(err, Error::Malformed(_)));
        let err = FiniteAlgebra::new(vec!["a".into()], vec![(Symbol::new("f", 2), vec![0, 0])]);
        assert!(err.is_err());
        assert!(FiniteAlgebra::new(vec![], vec![]).is_err());
    }

    #[test]
    fn subalgebra_of_full_carrier_is_full() {
        let d = catalog::diamond_cba();
        assert_eq!(
            d.generate_subalgebra(&[0, 1, 2, 3]).unwrap(),
            vec![0, 1, 2, 3]
        );
    }

    #[test]
    fn subalgebra_generated_by_atom_in_boolean_diamond() {
        let d = catalog::diamond_cba();
        let a = d.element("a").unwrap();
        assert_eq!(d.generate_subalgebra(&[a]).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn subalgebra_of_chain_forces_constants() {
        let c = catalog::chain3();
        assert_eq!(c.generate_subalgebra(&[1]).unwrap(), vec![0, 1, 2]);
        assert_eq!(c.generate_subalgebra(&[]).unwrap(), vec![0, 2]);
    }

    #[test]
    fn restrict_keeps_labels_and_tables() {
        let c = catalog::chain3();
        let sub = c.restrict(&[0, 2]).unwrap();
        assert_eq!(sub.labels(), &["bot".to_string(), "top".to_string()]);
        assert!(isomorphic(&sub, &catalog::two()).unwrap());
        assert!(c.restrict(&[1]).is_err());
    }

    #[test]
    fn seed_out_of_range_is_rejected() {
        assert!(catalog::two().generate_subalgebra(&[5]).is_err());
    }
}
