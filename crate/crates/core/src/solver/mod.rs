//! Existence of trapezoid representations under a mode, and forced facts.
//!
//! A poset is compiled into endpoint atoms and disjunctive clauses, then
//! searched by DPLL. Non-unit modes only need the order among endpoints, so
//! a partial assignment is infeasible exactly when the closed endpoint order
//! has a strict cycle. Unit modes add an exact LP check.

mod atom;
mod closure;
mod forced;
pub mod lp;
mod search;
mod system;

use std::fmt;
use std::time::{Duration, Instant};

use crate::poset::Poset;
use crate::rational::Rational;
use crate::representation::{Trapezoid, TrapezoidRepresentation};

pub use atom::{flip_fact, format_fact, negate_fact, parse_fact, Atom, Clause, Fact, Literal, Var};
pub use closure::OrderGraph;
pub use forced::{certify_unit_impossible_by_nesting, forced, forced_disjunction, ForcedReport, NestingReport};
pub use system::{compile, compile_with, ClauseKind, CompileOptions, ConstraintSystem, Mode};

use search::{NodeResult, Search};

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    /// 0 uses the global rayon pool, 1 forces sequential search.
    pub threads: usize,
    /// Branching depth below which children are explored concurrently.
    pub parallel_depth: usize,
    /// Fix the first incomparability branch to its bottom literal. Only
    /// sound when the system is invariant under swapping the baselines.
    pub break_vertical_symmetry: bool,
    /// Run the unit LP at interior nodes, not only at leaves.
    pub lp_every_node: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_nodes: None,
            max_time: None,
            threads: 0,
            parallel_depth: 6,
            break_vertical_symmetry: false,
            lp_every_node: true,
        }
    }
}

impl SolveOptions {
    pub fn sequential() -> Self {
        SolveOptions {
            threads: 1,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub max_depth: usize,
    pub lp_calls: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Sat(TrapezoidRepresentation),
    Unsat,
    /// The node or time budget ran out.
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub outcome: Outcome,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self.outcome, Outcome::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self.outcome, Outcome::Unsat)
    }

    pub fn witness(&self) -> Option<&TrapezoidRepresentation> {
        match &self.outcome {
            Outcome::Sat(w) => Some(w),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self.outcome {
            Outcome::Sat(_) => "sat",
            Outcome::Unsat => "unsat",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for SolveResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (nodes={}, depth={}, lp={}, {} ms)",
            self.status(),
            self.stats.nodes,
            self.stats.max_depth,
            self.stats.lp_calls,
            self.stats.elapsed.as_millis()
        )
    }
}

pub fn solve(cs: &ConstraintSystem, opts: &SolveOptions) -> SolveResult {
    let started = Instant::now();
    let search = Search::new(cs, opts);
    let result = run(&search, opts);
    let stats = SolveStats {
        nodes: search.nodes.load(std::sync::atomic::Ordering::Relaxed),
        max_depth: search.max_depth.load(std::sync::atomic::Ordering::Relaxed),
        lp_calls: search.lp_calls.load(std::sync::atomic::Ordering::Relaxed),
        elapsed: started.elapsed(),
    };
    let outcome = match result {
        NodeResult::Sat(coords) => {
            let w = witness(cs, &coords);
            check_witness(cs, &w, &coords);
            Outcome::Sat(w)
        }
        NodeResult::Unsat => Outcome::Unsat,
        NodeResult::Aborted => Outcome::Inconclusive,
    };
    SolveResult { outcome, stats }
}

/// Shorthand for `solve(compile(p, mode, []))`.
pub fn solve_poset(p: &Poset, mode: Mode, opts: &SolveOptions) -> SolveResult {
    solve(&compile(p, mode, &[]), opts)
}

#[cfg(feature = "parallel")]
fn run(search: &Search<'_>, opts: &SolveOptions) -> NodeResult {
    if opts.threads > 1 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(opts.threads).build() {
            return pool.install(|| search.run());
        }
    }
    search.run()
}

#[cfg(not(feature = "parallel"))]
fn run(search: &Search<'_>, _opts: &SolveOptions) -> NodeResult {
    search.run()
}

fn witness(cs: &ConstraintSystem, coords: &[Rational]) -> TrapezoidRepresentation {
    let entries = (0..cs.poset.len())
        .map(|x| {
            let c = |k: usize| coords[4 * x + k].clone();
            let t = Trapezoid::new(c(0), c(1), c(2), c(3)).expect("base atoms hold");
            (cs.poset.name(x).to_string(), t)
        })
        .collect();
    TrapezoidRepresentation::new(entries).expect("names are distinct")
}

/// A SAT answer must satisfy the poset, the mode and every clause.
fn check_witness(cs: &ConstraintSystem, w: &TrapezoidRepresentation, coords: &[Rational]) {
    assert!(
        w.represents(&cs.poset).unwrap_or(false),
        "witness does not represent the poset"
    );
    if cs.mode.proper() {
        assert!(w.is_proper(), "witness is not proper");
    }
    if cs.mode.unit() {
        assert!(w.is_unit(), "witness is not unit");
    }
    let holds = |a: &Atom| match *a {
        Atom::Lt(u, v) => coords[u.id()] < coords[v.id()],
        Atom::Le(u, v) => coords[u.id()] <= coords[v.id()],
        Atom::Eq(u, v) => coords[u.id()] == coords[v.id()],
        Atom::UnitSum(x) => {
            let c = |k: usize| &coords[4 * x + k];
            (c(1) - c(0)) + (c(3) - c(2)) == Rational::from_integer(2.into())
        }
    };
    for c in &cs.clauses {
        assert!(c.iter().any(|l| l.iter().all(holds)), "witness violates a clause");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SolveOptions {
        SolveOptions::sequential()
    }

    #[test]
    fn chain_is_sat_in_every_mode() {
        let p = Poset::chain(&["a", "b"]).unwrap();
        for m in Mode::ALL {
            let r = solve_poset(&p, m, &opts());
            assert!(r.is_sat(), "{m}");
        }
    }

    #[test]
    fn antichain_witness() {
        let p = Poset::antichain(&["a", "b", "c"]).unwrap();
        let r = solve_poset(&p, Mode::Unit, &opts());
        let w = r.witness().unwrap();
        assert!(w.is_unit() && w.represents(&p).unwrap());
    }

    #[test]
    fn two_plus_two_needs_two_baselines() {
        // 2+2 is not an interval order but is a trapezoid order.
        let p = Poset::new(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")], true).unwrap();
        for m in Mode::ALL {
            assert!(solve_poset(&p, m, &opts()).is_sat(), "{m}");
        }
    }

    #[test]
    fn contradictory_extra_clause_is_unsat() {
        let p = Poset::chain(&["a", "b"]).unwrap();
        let fact = parse_fact(&p, "R(b)<L(a)").unwrap();
        let cs = compile(&p, Mode::Any, &[fact.iter().map(|a| vec![*a]).collect()]);
        assert!(solve(&cs, &opts()).is_unsat());
    }

    #[test]
    fn starved_budget_is_inconclusive() {
        let p = Poset::antichain(&["a", "b", "c", "d"]).unwrap();
        let o = SolveOptions {
            max_nodes: Some(0),
            ..opts()
        };
        let r = solve_poset(&p, Mode::Proper, &o);
        assert!(matches!(r.outcome, Outcome::Inconclusive));
    }
}
