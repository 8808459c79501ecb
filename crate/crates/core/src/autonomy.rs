//! Autonomous sets (modules) and their reversal.
//!
//! A set `A` is autonomous when every element outside it relates the same
//! way (below, above, or incomparable) to all members. Reversing the order
//! inside an autonomous set keeps the incomparability graph, and every
//! order with that graph is reachable by a sequence of such reversals.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::poset::{bit, ones, Mask, Poset};

/// Largest poset for the exhaustive subset scan.
pub const MAX_SCAN: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AutonomousSet {
    pub mask: Mask,
    pub names: Vec<String>,
}

impl AutonomousSet {
    fn from_mask(p: &Poset, mask: Mask) -> Self {
        AutonomousSet {
            mask,
            names: ones(mask).map(|i| p.name(i).to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

fn to_mask<S: AsRef<str>>(p: &Poset, set: &[S]) -> Result<Mask> {
    set.iter().try_fold(0, |m, s| Ok(m | bit(p.index_of(s.as_ref())?)))
}

pub fn is_autonomous_mask(p: &Poset, mask: Mask) -> bool {
    (0..p.len()).filter(|&t| mask & bit(t) == 0).all(|t| {
        let above = p.successors(t) & mask;
        let below = p.predecessors(t) & mask;
        above == mask || below == mask || (above == 0 && below == 0)
    })
}

pub fn is_autonomous<S: AsRef<str>>(p: &Poset, set: &[S]) -> Result<bool> {
    Ok(is_autonomous_mask(p, to_mask(p, set)?))
}

/// All autonomous sets, ordered by size and then by element positions.
/// Nontrivial means at least two elements and not the whole set.
pub fn autonomous_sets(p: &Poset, nontrivial_only: bool) -> Result<Vec<AutonomousSet>> {
    let n = p.len();
    if n > MAX_SCAN {
        return Err(Error::LimitExceeded(MAX_SCAN));
    }
    let full = p.full_mask();
    let keep = |m: Mask| m != 0 && (!nontrivial_only || (m.count_ones() >= 2 && m != full)) && is_autonomous_mask(p, m);
    let total: Mask = 1 << n;
    #[cfg(feature = "parallel")]
    let mut masks: Vec<Mask> = {
        use rayon::prelude::*;
        (1..total).into_par_iter().filter(|&m| keep(m)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut masks: Vec<Mask> = (1..total).filter(|&m| keep(m)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), ones(m).collect::<Vec<_>>()));
    Ok(masks.into_iter().map(|m| AutonomousSet::from_mask(p, m)).collect())
}

pub fn reverse_module_mask(p: &Poset, mask: Mask) -> Result<Poset> {
    if !is_autonomous_mask(p, mask) {
        return Err(Error::NotAutonomous(
            ones(mask).map(|i| p.name(i).to_string()).collect(),
        ));
    }
    let n = p.len();
    let mut succ: Vec<Mask> = (0..n).map(|i| p.successors(i)).collect();
    for i in ones(mask) {
        succ[i] = (p.successors(i) & !mask) | (p.predecessors(i) & mask);
    }
    Poset::from_masks(p.names().to_vec(), succ)
}

/// Transposes the order inside an autonomous set.
pub fn reverse_module<S: AsRef<str>>(p: &Poset, set: &[S]) -> Result<Poset> {
    reverse_module_mask(p, to_mask(p, set)?)
}

/// Every order reachable by repeated module reversals, starting with `p`,
/// deduplicated by labeled relation. Fails once more than `limit` orders
/// are found.
pub fn reversal_closure(p: &Poset, limit: usize) -> Result<Vec<Poset>> {
    let mut seen: HashSet<Vec<Mask>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(p.masks().to_vec());
    queue.push_back(p.clone());
    while let Some(q) = queue.pop_front() {
        out.push(q.clone());
        if out.len() > limit {
            return Err(Error::LimitExceeded(limit));
        }
        let mut modules: Vec<Mask> = autonomous_sets(&q, false)?
            .into_iter()
            .map(|a| a.mask)
            .filter(|m| m.count_ones() >= 2)
            .collect();
        modules.sort();
        for m in modules {
            let r = reverse_module_mask(&q, m)?;
            if seen.insert(r.masks().to_vec()) {
                queue.push_back(r);
            }
        }
        if seen.len() > limit {
            return Err(Error::LimitExceeded(limit));
        }
    }
    Ok(out)
}

/// Runs `checker` on every member of the reversal closure. A property of
/// the incomparability graph holds iff it holds for all of them.
pub fn graph_property_report<F>(p: &Poset, limit: usize, checker: F) -> Result<Vec<(Poset, bool)>>
where
    F: Fn(&Poset) -> Result<bool> + Sync,
{
    let members = reversal_closure(p, limit)?;
    #[cfg(feature = "parallel")]
    let verdicts: Vec<Result<bool>> = {
        use rayon::prelude::*;
        members.par_iter().map(&checker).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let verdicts: Vec<Result<bool>> = members.iter().map(&checker).collect();
    members.into_iter().zip(verdicts).map(|(m, v)| Ok((m, v?))).collect()
}

pub fn graph_property_holds<F>(p: &Poset, limit: usize, checker: F) -> Result<bool>
where
    F: Fn(&Poset) -> Result<bool> + Sync,
{
    Ok(graph_property_report(p, limit, checker)?.iter().all(|(_, ok)| *ok))
}
