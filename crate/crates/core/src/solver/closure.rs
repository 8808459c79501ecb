//! Transitively closed endpoint-order graph.
//!
//! `weak[u]` holds every `v` with `u ≤ v` entailed (reflexive), `strict[u]`
//! every `v` with `u < v` entailed. A state is consistent iff no variable is
//! strictly below itself.

use super::atom::Atom;

#[derive(Clone, Debug)]
pub struct OrderGraph {
    n: usize,
    words: usize,
    weak: Vec<u64>,
    strict: Vec<u64>,
}

impl OrderGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut g = OrderGraph {
            n,
            words,
            weak: vec![0; n * words],
            strict: vec![0; n * words],
        };
        for u in 0..n {
            g.weak[u * words + u / 64] |= 1 << (u % 64);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn get(rows: &[u64], words: usize, u: usize, v: usize) -> bool {
        rows[u * words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn le(&self, u: usize, v: usize) -> bool {
        Self::get(&self.weak, self.words, u, v)
    }

    pub fn lt(&self, u: usize, v: usize) -> bool {
        Self::get(&self.strict, self.words, u, v)
    }

    /// Adds `a ≤ b` (or `a < b`). Returns false, leaving the graph unchanged,
    /// if the edge would close a cycle through a strict edge.
    pub fn add_edge(&mut self, a: usize, b: usize, strict: bool) -> bool {
        if self.lt(b, a) || (strict && self.le(b, a)) {
            return false;
        }
        if if strict { self.lt(a, b) } else { self.le(a, b) } {
            return true;
        }
        let w = self.words;
        let weak_b: Vec<u64> = self.weak[b * w..(b + 1) * w].to_vec();
        let strict_b: Vec<u64> = self.strict[b * w..(b + 1) * w].to_vec();
        for x in 0..self.n {
            if !self.le(x, a) {
                continue;
            }
            let via_strict = strict || self.lt(x, a);
            let src = if via_strict { &weak_b } else { &strict_b };
            for k in 0..w {
                self.weak[x * w + k] |= weak_b[k];
                self.strict[x * w + k] |= src[k];
            }
        }
        true
    }

    /// Adds an ordering atom. Linear atoms are ignored here.
    pub fn add(&mut self, atom: &Atom) -> bool {
        match *atom {
            Atom::Lt(u, v) => self.add_edge(u.id(), v.id(), true),
            Atom::Le(u, v) => self.add_edge(u.id(), v.id(), false),
            Atom::Eq(u, v) => self.add_edge(u.id(), v.id(), false) && self.add_edge(v.id(), u.id(), false),
            Atom::UnitSum(_) => true,
        }
    }

    pub fn entails(&self, atom: &Atom) -> bool {
        match *atom {
            Atom::Lt(u, v) => self.lt(u.id(), v.id()),
            Atom::Le(u, v) => self.le(u.id(), v.id()),
            Atom::Eq(u, v) => self.le(u.id(), v.id()) && self.le(v.id(), u.id()),
            Atom::UnitSum(_) => false,
        }
    }

    pub fn contradicts(&self, atom: &Atom) -> bool {
        match *atom {
            Atom::Lt(u, v) => self.le(v.id(), u.id()),
            Atom::Le(u, v) => self.lt(v.id(), u.id()),
            Atom::Eq(u, v) => self.lt(u.id(), v.id()) || self.lt(v.id(), u.id()),
            Atom::UnitSum(_) => false,
        }
    }

    /// Integer ranks: the number of weak classes strictly below each
    /// variable. Satisfies every entailed atom.
    pub fn ranks(&self) -> Vec<i64> {
        let rep: Vec<usize> = (0..self.n)
            .map(|v| (0..self.n).find(|&u| self.le(u, v) && self.le(v, u)).unwrap())
            .collect();
        (0..self.n)
            .map(|v| (0..self.n).filter(|&c| rep[c] == c && self.lt(c, v)).count() as i64)
            .collect()
    }

    /// Hasse edges between weak classes: `(rep_u, rep_v, strict)`, plus the
    /// class representative of every variable.
    pub fn class_skeleton(&self) -> (Vec<usize>, Vec<(usize, usize, bool)>) {
        let rep: Vec<usize> = (0..self.n)
            .map(|v| (0..self.n).find(|&u| self.le(u, v) && self.le(v, u)).unwrap())
            .collect();
        let classes: Vec<usize> = (0..self.n).filter(|&v| rep[v] == v).collect();
        let mut edges = Vec::new();
        for &u in &classes {
            for &v in &classes {
                if u == v || !self.le(u, v) {
                    continue;
                }
                let strict = self.lt(u, v);
                let through = |m: usize| {
                    m != u && m != v && self.le(u, m) && self.le(m, v) && (!strict || self.lt(u, m) || self.lt(m, v))
                };
                if !classes.iter().any(|&m| through(m)) {
                    edges.push((u, v, strict));
                }
            }
        }
        (rep, edges)
    }
}
