//! Forced facts: a conjunction holds in every representation iff the system
//! plus its negation has no solution.

use std::time::Duration;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::representation::Endpoint::{BottomLeft, BottomRight, TopLeft, TopRight};
use crate::representation::TrapezoidRepresentation;

use super::atom::{negate_fact, Atom, Fact, Var};
use super::system::{compile, Mode};
use super::{solve, Outcome, SolveOptions, SolveStats};

#[derive(Debug, Clone)]
pub struct ForcedReport {
    /// `None` when the budget ran out.
    pub holds: Option<bool>,
    /// A representation violating every listed fact, when one exists.
    pub counterexample: Option<TrapezoidRepresentation>,
    pub stats: SolveStats,
}

impl ForcedReport {
    pub fn status(&self) -> &'static str {
        match self.holds {
            Some(true) => "forced",
            Some(false) => "not-forced",
            None => "inconclusive",
        }
    }
}

/// True iff `fact` holds in every `mode`-representation of `p` (vacuously
/// true when there is none).
pub fn forced(p: &Poset, mode: Mode, fact: &[Atom], opts: &SolveOptions) -> ForcedReport {
    forced_disjunction(p, mode, &[fact.to_vec()], opts)
}

/// True iff every `mode`-representation satisfies at least one of `facts`.
/// Symmetry breaking is dropped unless the query is flip-invariant.
pub fn forced_disjunction(p: &Poset, mode: Mode, facts: &[Fact], opts: &SolveOptions) -> ForcedReport {
    let negations: Vec<_> = facts.iter().map(|f| negate_fact(f)).collect();
    let cs = compile(p, mode, &negations);
    let mut opts = opts.clone();
    if opts.break_vertical_symmetry && !cs.is_flip_symmetric() {
        opts.break_vertical_symmetry = false;
    }
    let r = solve(&cs, &opts);
    match r.outcome {
        Outcome::Unsat => ForcedReport {
            holds: Some(true),
            counterexample: None,
            stats: r.stats,
        },
        Outcome::Sat(w) => ForcedReport {
            holds: Some(false),
            counterexample: Some(w),
            stats: r.stats,
        },
        Outcome::Inconclusive => ForcedReport {
            holds: None,
            counterexample: None,
            stats: r.stats,
        },
    }
}

#[derive(Debug, Clone)]
pub struct NestingReport {
    pub inner: Vec<String>,
    pub bottom_host: String,
    pub top_host: String,
    /// The inner bases sit inside the hosts, on one baseline or its mirror.
    pub containment_forced: bool,
    /// The inner elements are pairwise disjoint on both baselines.
    pub chain_forced: bool,
    /// `Σ(t+b)` over the inner elements in a unit representation.
    pub total: usize,
    /// One of `Σt`, `Σb` is at least this.
    pub bound: usize,
    pub contradiction: bool,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl NestingReport {
    pub fn success(&self) -> bool {
        self.containment_forced && self.chain_forced && self.contradiction
    }

    pub fn summary(&self) -> String {
        let k = self.inner.len();
        if !self.containment_forced {
            return format!(
                "containment of {{{}}} in {}/{} is not forced",
                self.inner.join(","),
                self.bottom_host,
                self.top_host
            );
        }
        if !self.chain_forced {
            return format!(
                "{{{}}} is not forced to be disjoint on both baselines",
                self.inner.join(",")
            );
        }
        format!(
            "unit forces sum of t+b over {k} inner elements = {}; one half-sum >= {}, so a host base exceeds {}: bound {} vs 2{}",
            self.total,
            self.bound,
            if k >= 2 { format!("{}", self.bound) } else { "nothing".into() },
            self.total,
            if self.contradiction { ", contradiction" } else { ", no contradiction" }
        )
    }
}

/// Certifies that `p` has no unit representation because the `inner`
/// elements are trapped inside `bottom_host`'s bottom base and `top_host`'s
/// top base (or the mirrored placement) while forming a chain.
pub fn certify_unit_impossible_by_nesting<S: AsRef<str>>(
    p: &Poset,
    inner: &[S],
    bottom_host: &str,
    top_host: &str,
    opts: &SolveOptions,
) -> Result<NestingReport> {
    let idx = inner
        .iter()
        .map(|s| p.index_of(s.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let hb = p.index_of(bottom_host)?;
    let ht = p.index_of(top_host)?;
    let v = Var::new;
    let inside = |host: usize, top: bool| -> Fact {
        let (lo, hi) = if top {
            (TopLeft, TopRight)
        } else {
            (BottomLeft, BottomRight)
        };
        idx.iter()
            .flat_map(|&x| [Atom::Le(v(host, lo), v(x, lo)), Atom::Le(v(x, hi), v(host, hi))])
            .collect()
    };
    let mut nodes = 0;
    let mut elapsed = Duration::ZERO;
    let mut tally = |s: &SolveStats| {
        nodes += s.nodes;
        elapsed += s.elapsed;
    };

    let straight: Fact = [inside(hb, false), inside(ht, true)].concat();
    let mirrored: Fact = [inside(hb, true), inside(ht, false)].concat();
    let containment = forced_disjunction(p, Mode::Any, &[straight, mirrored], opts);
    tally(&containment.stats);
    let containment_forced = match containment.holds {
        Some(h) => h,
        None => return Err(Error::Inconclusive),
    };

    // Pairwise disjointness on both baselines, in some order.
    let mut chain_forced = true;
    for (a, &x) in idx.iter().enumerate() {
        for &y in &idx[a + 1..] {
            let facts: Vec<Fact> = [(x, y), (y, x)]
                .iter()
                .map(|&(u, w)| {
                    vec![
                        Atom::Lt(v(u, TopRight), v(w, TopLeft)),
                        Atom::Lt(v(u, BottomRight), v(w, BottomLeft)),
                    ]
                })
                .collect();
            let r = forced_disjunction(p, Mode::Any, &facts, opts);
            tally(&r.stats);
            match r.holds {
                Some(true) => {}
                Some(false) => chain_forced = false,
                None => return Err(Error::Inconclusive),
            }
        }
    }
    let k = idx.len();
    Ok(NestingReport {
        inner: inner.iter().map(|s| s.as_ref().to_string()).collect(),
        bottom_host: bottom_host.to_string(),
        top_host: top_host.to_string(),
        containment_forced,
        chain_forced,
        total: 2 * k,
        bound: k,
        // Hosts contain k disjoint bases with positive gaps, so one host
        // base is longer than k; a unit host has base sum 2.
        contradiction: k >= 2,
        nodes,
        elapsed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::parse_fact;

    #[test]
    fn chain_facts() {
        let p = Poset::chain(&["a", "b"]).unwrap();
        let o = SolveOptions::sequential();
        let f = parse_fact(&p, "R(a)<L(b)").unwrap();
        assert_eq!(forced(&p, Mode::Any, &f, &o).holds, Some(true));
        let f = parse_fact(&p, "R(b)<L(a)").unwrap();
        let r = forced(&p, Mode::Any, &f, &o);
        assert_eq!(r.holds, Some(false));
        assert!(r.counterexample.unwrap().represents(&p).unwrap());
        let both = [
            parse_fact(&p, "R(a)<L(b)").unwrap(),
            parse_fact(&p, "r(a)<l(b)").unwrap(),
        ];
        assert_eq!(forced_disjunction(&p, Mode::Any, &both, &o).holds, Some(true));
    }

    #[test]
    fn equality_fact_negation() {
        let p = Poset::antichain(&["a", "b"]).unwrap();
        let o = SolveOptions::sequential();
        let f = parse_fact(&p, "L(a)=L(b)").unwrap();
        assert_eq!(forced(&p, Mode::Any, &f, &o).holds, Some(false));
    }

    #[test]
    fn nesting_fails_without_containment() {
        let p = Poset::chain(&["a", "b"]).unwrap();
        let r = certify_unit_impossible_by_nesting(&p, &["a"], "b", "b", &SolveOptions::sequential()).unwrap();
        assert!(!r.containment_forced);
        assert!(!r.success());
    }
}
