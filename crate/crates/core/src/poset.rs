//! Finite strict partial orders over named elements.
//!
//! Relations are stored as one successor bitmask per element, so a poset
//! holds at most [`Poset::MAX_ELEMENTS`] elements. Every constructor
//! validates irreflexivity, antisymmetry and transitivity; a `Poset` value
//! is always a valid strict order.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Bitmask over element indices.
pub type Mask = u64;

#[derive(Clone)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    succ: Vec<Mask>,
}

/// Relation of one element to another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Less,
    Greater,
    Incomparable,
    Equal,
}

impl Poset {
    pub const MAX_ELEMENTS: usize = 64;

    /// Builds a poset from element names and `(a, b)` pairs meaning `a < b`.
    ///
    /// With `close` the pairs are closed transitively; otherwise they must
    /// already be transitive.
    pub fn new<S: AsRef<str>, T: AsRef<str>>(elements: &[S], pairs: &[(T, T)], close: bool) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = build_index(&names)?;
        let mut succ = vec![0 as Mask; names.len()];
        for (a, b) in pairs {
            let i = lookup(&index, a.as_ref())?;
            let j = lookup(&index, b.as_ref())?;
            succ[i] |= bit(j);
        }
        if close {
            transitive_closure(&mut succ);
        }
        Self::validated(names, index, succ)
    }

    /// Builds a poset from successor masks, validating the order axioms.
    pub fn from_masks(names: Vec<String>, succ: Vec<Mask>) -> Result<Self> {
        let index = build_index(&names)?;
        if succ.len() != names.len() {
            return Err(Error::ElementMismatch);
        }
        Self::validated(names, index, succ)
    }

    pub fn antichain<S: AsRef<str>>(elements: &[S]) -> Result<Self> {
        Self::new::<S, &str>(elements, &[], false)
    }

    /// The chain `elements[0] < elements[1] < ...`.
    pub fn chain<S: AsRef<str>>(elements: &[S]) -> Result<Self> {
        let pairs: Vec<(&str, &str)> = elements.windows(2).map(|w| (w[0].as_ref(), w[1].as_ref())).collect();
        Self::new(elements, &pairs, true)
    }

    fn validated(names: Vec<String>, index: HashMap<String, usize>, succ: Vec<Mask>) -> Result<Self> {
        let n = names.len();
        for (i, &row) in succ.iter().enumerate() {
            if row & bit(i) != 0 {
                return Err(Error::Cycle(names[i].clone()));
            }
            if n < 64 && row >> n != 0 {
                return Err(Error::ElementMismatch);
            }
        }
        for i in 0..n {
            for j in ones(succ[i]) {
                if succ[j] & bit(i) != 0 {
                    return Err(Error::Cycle(names[i].clone()));
                }
                let missing = succ[j] & !succ[i];
                if missing != 0 {
                    let k = missing.trailing_zeros() as usize;
                    return Err(Error::NotTransitive(
                        names[i].clone(),
                        names[j].clone(),
                        names[k].clone(),
                    ));
                }
            }
        }
        Ok(Poset { names, index, succ })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        lookup(&self.index, name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Mask of all elements.
    pub fn full_mask(&self) -> Mask {
        full(self.len())
    }

    /// `i < j` by index.
    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.succ[i] & bit(j) != 0
    }

    #[inline]
    pub fn successors(&self, i: usize) -> Mask {
        self.succ[i]
    }

    pub fn predecessors(&self, i: usize) -> Mask {
        let mut m = 0;
        for (k, &row) in self.succ.iter().enumerate() {
            if row & bit(i) != 0 {
                m |= bit(k);
            }
        }
        m
    }

    /// Elements incomparable to `i` (excluding `i`).
    pub fn incomparables(&self, i: usize) -> Mask {
        self.full_mask() & !bit(i) & !self.succ[i] & !self.predecessors(i)
    }

    #[inline]
    pub fn relation(&self, i: usize, j: usize) -> Relation {
        if i == j {
            Relation::Equal
        } else if self.lt(i, j) {
            Relation::Less
        } else if self.lt(j, i) {
            Relation::Greater
        } else {
            Relation::Incomparable
        }
    }

    #[inline]
    pub fn incomparable_idx(&self, i: usize, j: usize) -> bool {
        self.relation(i, j) == Relation::Incomparable
    }

    pub fn precedes(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.lt(self.index_of(a)?, self.index_of(b)?))
    }

    pub fn incomparable(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.incomparable_idx(self.index_of(a)?, self.index_of(b)?))
    }

    /// All pairs `(i, j)` with `i < j` in the order, row-major.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| ones(self.succ[i]).map(move |j| (i, j)))
            .collect()
    }

    /// Unordered incomparable pairs `(i, j)` with `i < j` as indices.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.incomparable_idx(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Induced sub-order on the named subset, in the subset's order.
    pub fn restriction<S: AsRef<str>>(&self, subset: &[S]) -> Result<Poset> {
        let idx = subset
            .iter()
            .map(|s| self.index_of(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        self.restriction_idx(&idx)
    }

    pub fn restriction_idx(&self, idx: &[usize]) -> Result<Poset> {
        let names: Vec<String> = idx.iter().map(|&i| self.names[i].clone()).collect();
        let succ = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.lt(i, j))
                    .fold(0, |m, (k, _)| m | bit(k))
            })
            .collect();
        Poset::from_masks(names, succ)
    }

    /// Restriction to the elements of a mask, in index order.
    pub fn restriction_mask(&self, mask: Mask) -> Poset {
        let idx: Vec<usize> = ones(mask).collect();
        self.restriction_idx(&idx)
            .expect("restriction of a valid poset is valid")
    }

    /// The order with every relation reversed.
    pub fn dual(&self) -> Poset {
        let n = self.len();
        let mut succ = vec![0; n];
        for i in 0..n {
            for j in ones(self.succ[i]) {
                succ[j] |= bit(i);
            }
        }
        Poset {
            names: self.names.clone(),
            index: self.index.clone(),
            succ,
        }
    }

    /// `x < y` in the result iff `x < y` in both orders.
    pub fn intersect(&self, other: &Poset) -> Result<Poset> {
        let map = self.alignment(other)?;
        let succ = (0..self.len())
            .map(|i| {
                let mut row = 0;
                for j in ones(self.succ[i]) {
                    if other.lt(map[i], map[j]) {
                        row |= bit(j);
                    }
                }
                row
            })
            .collect();
        Poset::from_masks(self.names.clone(), succ)
    }

    /// For each element of `self`, its index in `other`; fails unless the
    /// element sets coincide.
    pub fn alignment(&self, other: &Poset) -> Result<Vec<usize>> {
        if self.len() != other.len() {
            return Err(Error::ElementMismatch);
        }
        self.names
            .iter()
            .map(|n| other.index.get(n).copied().ok_or(Error::ElementMismatch))
            .collect()
    }

    /// Same element set (in any order) and the same relation.
    pub fn same_order(&self, other: &Poset) -> bool {
        match self.alignment(other) {
            Ok(map) => (0..self.len()).all(|i| (0..self.len()).all(|j| self.lt(i, j) == other.lt(map[i], map[j]))),
            Err(_) => false,
        }
    }

    /// Raw successor masks, used as a labeled identity key.
    pub fn masks(&self) -> &[Mask] {
        &self.succ
    }

    pub fn incomparability_graph(&self) -> IncompGraph {
        let adj = (0..self.len()).map(|i| self.incomparables(i)).collect();
        IncompGraph {
            names: self.names.clone(),
            adj,
        }
    }

    /// Validates the three order axioms. Always true for a constructed
    /// value; kept public for property tests.
    pub fn check_axioms(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| !self.lt(i, i))
            && (0..n).all(|i| ones(self.succ[i]).all(|j| !self.lt(j, i)))
            && (0..n).all(|i| ones(self.succ[i]).all(|j| self.succ[j] & !self.succ[i] == 0))
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|i| self.incomparables(i) == 0)
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.same_order(other)
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .comparable_pairs()
            .into_iter()
            .map(|(i, j)| format!("{}<{}", self.names[i], self.names[j]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.names)
            .field("less", &pairs)
            .finish()
    }
}

/// Incomparability (cocomparability) graph of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncompGraph {
    names: Vec<String>,
    adj: Vec<Mask>,
}

impl IncompGraph {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        let i = self.names.iter().position(|n| n == a);
        let j = self.names.iter().position(|n| n == b);
        matches!((i, j), (Some(i), Some(j)) if self.adj[i] & bit(j) != 0)
    }

    /// Edges as name pairs, each once, in index order.
    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (i, &row) in self.adj.iter().enumerate() {
            for j in ones(row).filter(|&j| j > i) {
                out.push((self.names[i].clone(), self.names[j].clone()));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn adjacency(&self) -> &[Mask] {
        &self.adj
    }
}

#[inline]
pub fn bit(i: usize) -> Mask {
    1 << i
}

#[inline]
pub fn full(n: usize) -> Mask {
    if n >= 64 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

/// Iterates over the set bits of a mask in increasing order.
pub fn ones(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn transitive_closure(succ: &mut [Mask]) {
    let n = succ.len();
    for k in 0..n {
        for i in 0..n {
            if succ[i] & bit(k) != 0 {
                succ[i] |= succ[k];
            }
        }
    }
}

fn build_index(names: &[String]) -> Result<HashMap<String, usize>> {
    if names.len() > Poset::MAX_ELEMENTS {
        return Err(Error::TooLarge(names.len(), Poset::MAX_ELEMENTS));
    }
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateElement(n.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, usize>, name: &str) -> Result<usize> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| Error::UnknownElement(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc_chain() -> Poset {
        Poset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")], true).unwrap()
    }

    #[test]
    fn closure_adds_transitive_pair() {
        let p = abc_chain();
        assert!(p.precedes("a", "c").unwrap());
        assert_eq!(p.comparable_pairs().len(), 3);
    }

    #[test]
    fn cycle_rejected() {
        let err = Poset::new(&["a", "b"], &[("a", "b"), ("b", "a")], true).unwrap_err();
        assert!(matches!(err, Error::Cycle(_)));
    }

    #[test]
    fn strict_mode_rejects_open_chain() {
        let err = Poset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")], false).unwrap_err();
        assert!(matches!(err, Error::NotTransitive(..)));
    }

    #[test]
    fn unknown_and_duplicate_names() {
        assert!(matches!(
            Poset::new(&["a"], &[("a", "z")], true),
            Err(Error::UnknownElement(n)) if n == "z"
        ));
        assert!(matches!(Poset::antichain(&["a", "a"]), Err(Error::DuplicateElement(_))));
    }

    #[test]
    fn incomparability() {
        let chain = Poset::chain(&["a", "b"]).unwrap();
        assert!(!chain.incomparable("a", "b").unwrap());
        let anti = Poset::antichain(&["a", "b"]).unwrap();
        assert!(anti.incomparable("a", "b").unwrap());
        assert!(!anti.incomparable("a", "a").unwrap());
        assert!(anti.incomparable("a", "q").is_err());
    }

    #[test]
    fn restriction_and_identity() {
        let p = abc_chain();
        let r = p.restriction(&["a", "c"]).unwrap();
        assert!(r.precedes("a", "c").unwrap());
        assert_eq!(r.len(), 2);
        assert_eq!(p.restriction(&["a", "b", "c"]).unwrap(), p);
        assert!(p.restriction(&["a", "x"]).is_err());
    }

    #[test]
    fn dual_is_involution() {
        let p = abc_chain();
        let d = p.dual();
        assert!(d.precedes("b", "a").unwrap());
        assert_eq!(d.dual(), p);
        let anti = Poset::antichain(&["a", "b", "c"]).unwrap();
        assert_eq!(anti.dual(), anti);
    }

    #[test]
    fn intersection_basics() {
        let p = abc_chain();
        assert_eq!(p.intersect(&p).unwrap(), p);
        let meet = p.intersect(&p.dual()).unwrap();
        assert_eq!(meet, Poset::antichain(&["a", "b", "c"]).unwrap());
        let other = Poset::antichain(&["a", "b"]).unwrap();
        assert_eq!(p.intersect(&other).unwrap_err(), Error::ElementMismatch);
    }

    #[test]
    fn intersection_aligns_by_name() {
        let p = Poset::chain(&["a", "b"]).unwrap();
        let q = Poset::new(&["b", "a"], &[("a", "b")], true).unwrap();
        assert_eq!(p.intersect(&q).unwrap(), p);
    }

    #[test]
    fn incomparability_graph_extremes() {
        assert_eq!(abc_chain().incomparability_graph().edge_count(), 0);
        let k4 = Poset::antichain(&["a", "b", "c", "d"]).unwrap().incomparability_graph();
        assert_eq!(k4.edge_count(), 6);
        assert!(k4.has_edge("a", "d"));
        assert!(!k4.has_edge("a", "a"));
    }

    #[test]
    fn too_large() {
        let names: Vec<String> = (0..65).map(|i| format!("e{i}")).collect();
        assert!(matches!(Poset::antichain(&names), Err(Error::TooLarge(65, 64))));
    }
}
