//! Induced sub-order embeddings by backtracking.
//!
//! An embedding of `pattern` into `host` is an injective map `f` with
//! `x < y` iff `f(x) < f(y)`; it therefore also preserves incomparability.

use crate::poset::{bit, ones, Mask, Poset};

/// Pattern index `i` maps to host index `image[i]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Embedding {
    pub image: Vec<usize>,
}

impl Embedding {
    /// `(pattern name, host name)` pairs in pattern order.
    pub fn named<'a>(&self, pattern: &'a Poset, host: &'a Poset) -> Vec<(&'a str, &'a str)> {
        self.image
            .iter()
            .enumerate()
            .map(|(i, &h)| (pattern.name(i), host.name(h)))
            .collect()
    }

    /// Host names of the image, in pattern order.
    pub fn image_names<'a>(&self, host: &'a Poset) -> Vec<&'a str> {
        self.image.iter().map(|&h| host.name(h)).collect()
    }

    pub fn image_mask(&self) -> Mask {
        self.image.iter().fold(0, |m, &h| m | bit(h))
    }
}

/// All embeddings of `pattern` into `host`, sorted lexicographically by
/// image tuple.
pub fn find_embeddings(pattern: &Poset, host: &Poset) -> Vec<Embedding> {
    let mut out = Vec::new();
    Search::new(pattern, host).run(&mut |e| {
        out.push(e);
        true
    });
    out.sort();
    out
}

/// The lexicographically first embedding found by the search, if any.
pub fn first_embedding(pattern: &Poset, host: &Poset) -> Option<Embedding> {
    let mut found = None;
    Search::new(pattern, host).run(&mut |e| {
        found = Some(e);
        false
    });
    found
}

pub fn is_isomorphic(p: &Poset, q: &Poset) -> bool {
    p.len() == q.len() && p.comparable_pairs().len() == q.comparable_pairs().len() && first_embedding(p, q).is_some()
}

struct Search<'a> {
    pattern: &'a Poset,
    host: &'a Poset,
    /// (successor count, predecessor count) per element.
    pdeg: Vec<(u32, u32)>,
    hdeg: Vec<(u32, u32)>,
    image: Vec<usize>,
    used: Mask,
}

impl<'a> Search<'a> {
    fn new(pattern: &'a Poset, host: &'a Poset) -> Self {
        let deg = |p: &Poset| -> Vec<(u32, u32)> {
            (0..p.len())
                .map(|i| (p.successors(i).count_ones(), p.predecessors(i).count_ones()))
                .collect()
        };
        Search {
            pattern,
            host,
            pdeg: deg(pattern),
            hdeg: deg(host),
            image: Vec::with_capacity(pattern.len()),
            used: 0,
        }
    }

    /// Calls `visit` for each embedding until it returns `false`.
    fn run(&mut self, visit: &mut dyn FnMut(Embedding) -> bool) {
        if self.pattern.len() > self.host.len() {
            return;
        }
        self.extend(visit);
    }

    fn extend(&mut self, visit: &mut dyn FnMut(Embedding) -> bool) -> bool {
        let k = self.image.len();
        if k == self.pattern.len() {
            return visit(Embedding {
                image: self.image.clone(),
            });
        }
        let candidates = self.host.full_mask() & !self.used;
        for h in ones(candidates) {
            let (ps, pp) = self.pdeg[k];
            let (hs, hp) = self.hdeg[h];
            if ps > hs || pp > hp {
                continue;
            }
            let consistent = self
                .image
                .iter()
                .enumerate()
                .all(|(q, &hq)| self.pattern.relation(k, q) == self.host.relation(h, hq));
            if !consistent {
                continue;
            }
            self.image.push(h);
            self.used |= bit(h);
            let go_on = self.extend(visit);
            self.used &= !bit(h);
            self.image.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}
