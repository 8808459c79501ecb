//! DPLL over clause literals with an incrementally closed endpoint order.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use num_traits::{One, Signed, Zero};

use crate::rational::{int, Rational};
use crate::representation::Endpoint::{BottomLeft, BottomRight, TopLeft, TopRight};

use super::atom::{Atom, Literal, Var};
use super::closure::OrderGraph;
use super::lp::{LinearProgram, LpOutcome, RowKind};
use super::system::{ClauseKind, ConstraintSystem};
use super::SolveOptions;

pub(crate) enum NodeResult {
    Sat(Vec<Rational>),
    Unsat,
    Aborted,
}

#[derive(Clone)]
struct State {
    graph: OrderGraph,
    satisfied: Vec<bool>,
    symmetry_pending: bool,
}

pub(crate) struct Search<'a> {
    cs: &'a ConstraintSystem,
    opts: &'a SolveOptions,
    start: Instant,
    pub nodes: AtomicU64,
    pub lp_calls: AtomicU64,
    pub max_depth: AtomicUsize,
    stop: AtomicBool,
    pub exhausted: AtomicBool,
}

enum Status {
    Entailed,
    Dead,
    Open,
}

impl<'a> Search<'a> {
    pub fn new(cs: &'a ConstraintSystem, opts: &'a SolveOptions) -> Self {
        Search {
            cs,
            opts,
            start: Instant::now(),
            nodes: AtomicU64::new(0),
            lp_calls: AtomicU64::new(0),
            max_depth: AtomicUsize::new(0),
            stop: AtomicBool::new(false),
            exhausted: AtomicBool::new(false),
        }
    }

    pub fn run(&self) -> NodeResult {
        let mut graph = OrderGraph::new(self.cs.num_vars());
        for a in self.cs.base.iter().chain(&self.cs.hard) {
            if !graph.add(a) {
                return NodeResult::Unsat;
            }
        }
        let state = State {
            graph,
            satisfied: vec![false; self.cs.clauses.len()],
            symmetry_pending: self.opts.break_vertical_symmetry,
        };
        self.node(state, 0)
    }

    fn over_budget(&self, nodes: u64) -> bool {
        if let Some(max) = self.opts.max_nodes {
            if nodes > max {
                return true;
            }
        }
        if let Some(limit) = self.opts.max_time {
            if nodes.is_multiple_of(256) && self.start.elapsed() > limit {
                return true;
            }
        }
        false
    }

    fn status(g: &OrderGraph, lit: &Literal) -> Status {
        if lit.iter().any(|a| g.contradicts(a)) {
            Status::Dead
        } else if lit.iter().all(|a| g.entails(a)) {
            Status::Entailed
        } else {
            Status::Open
        }
    }

    /// Unit propagation to a fixpoint. Returns false on conflict.
    fn propagate(&self, st: &mut State) -> bool {
        loop {
            let mut changed = false;
            for (k, clause) in self.cs.clauses.iter().enumerate() {
                if st.satisfied[k] {
                    continue;
                }
                let mut open = None;
                let mut open_count = 0;
                let mut sat = false;
                for lit in clause {
                    match Self::status(&st.graph, lit) {
                        Status::Entailed => {
                            sat = true;
                            break;
                        }
                        Status::Open => {
                            open_count += 1;
                            open = Some(lit);
                        }
                        Status::Dead => {}
                    }
                }
                if sat {
                    st.satisfied[k] = true;
                    continue;
                }
                match open_count {
                    0 => return false,
                    1 => {
                        for a in open.unwrap() {
                            if !st.graph.add(a) {
                                return false;
                            }
                        }
                        st.satisfied[k] = true;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Unsatisfied clause with the fewest open literals, earliest on ties.
    fn pick(&self, st: &State) -> Option<(usize, Vec<usize>)> {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for (k, clause) in self.cs.clauses.iter().enumerate() {
            if st.satisfied[k] {
                continue;
            }
            let open: Vec<usize> = clause
                .iter()
                .enumerate()
                .filter(|(_, l)| matches!(Self::status(&st.graph, l), Status::Open))
                .map(|(i, _)| i)
                .collect();
            if best.as_ref().is_none_or(|(_, b)| open.len() < b.len()) {
                let done = open.len() == 2;
                best = Some((k, open));
                if done {
                    break;
                }
            }
        }
        best
    }

    fn node(&self, mut st: State, depth: usize) -> NodeResult {
        if self.stop.load(Ordering::Relaxed) {
            return NodeResult::Aborted;
        }
        let nodes = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.over_budget(nodes) {
            self.exhausted.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            return NodeResult::Aborted;
        }
        self.max_depth.fetch_max(depth, Ordering::Relaxed);
        if !self.propagate(&mut st) {
            return NodeResult::Unsat;
        }
        let choice = self.pick(&st);
        let leaf = choice.is_none();
        let mut lp_solution = None;
        if self.cs.mode.unit() && (leaf || self.opts.lp_every_node) {
            match self.unit_lp(&st.graph) {
                Some(x) => lp_solution = Some(x),
                None => return NodeResult::Unsat,
            }
        }
        let Some((k, open)) = choice else {
            let coords = match lp_solution {
                Some(x) => x,
                None => st.graph.ranks().into_iter().map(int).collect(),
            };
            return NodeResult::Sat(coords);
        };

        let clause = &self.cs.clauses[k];
        let mut branches: Vec<Literal> = Vec::new();
        let break_here =
            st.symmetry_pending && matches!(self.cs.kinds[k], ClauseKind::Incomparability { .. }) && open.len() == 2;
        if break_here {
            branches.push(clause[1].clone());
        } else {
            // Branch i also asserts the negation of earlier single-atom literals.
            for (pos, &i) in open.iter().enumerate() {
                let mut lit = clause[i].clone();
                for &j in &open[..pos] {
                    if let [a @ (Atom::Lt(..) | Atom::Le(..))] = clause[j].as_slice() {
                        lit.extend(a.negation());
                    }
                }
                branches.push(lit);
            }
        }
        st.symmetry_pending = false;
        st.satisfied[k] = true;

        let child = |lit: &Literal| -> NodeResult {
            let mut next = st.clone();
            for a in lit {
                if !next.graph.add(a) {
                    return NodeResult::Unsat;
                }
            }
            self.node(next, depth + 1)
        };

        #[cfg(feature = "parallel")]
        if self.opts.threads != 1 && depth < self.opts.parallel_depth {
            use rayon::prelude::*;
            let results: Vec<NodeResult> = branches
                .par_iter()
                .map(|lit| {
                    let r = child(lit);
                    if matches!(r, NodeResult::Sat(_)) {
                        self.stop.store(true, Ordering::Relaxed);
                    }
                    r
                })
                .collect();
            return combine(results);
        }

        let mut aborted = false;
        for lit in &branches {
            match child(lit) {
                NodeResult::Sat(x) => {
                    self.stop.store(true, Ordering::Relaxed);
                    return NodeResult::Sat(x);
                }
                NodeResult::Aborted => aborted = true,
                NodeResult::Unsat => {}
            }
            if aborted {
                break;
            }
        }
        if aborted {
            NodeResult::Aborted
        } else {
            NodeResult::Unsat
        }
    }

    /// Maximizes the common slack `δ ≤ 1` of all strict relations under the
    /// current order and the unit sums. Feasible iff the optimum is positive.
    fn unit_lp(&self, g: &OrderGraph) -> Option<Vec<Rational>> {
        self.lp_calls.fetch_add(1, Ordering::Relaxed);
        let (rep, edges) = g.class_skeleton();
        let mut col = vec![usize::MAX; g.len()];
        let mut next = 0;
        for v in 0..g.len() {
            if rep[v] == v {
                col[v] = next;
                next += 1;
            }
        }
        let delta = next;
        let mut lp = LinearProgram::new(next + 1);
        let one = Rational::one();
        for &(u, v, strict) in &edges {
            let mut coeffs = vec![(col[u], one.clone()), (col[v], -one.clone())];
            if strict {
                coeffs.push((delta, one.clone()));
            }
            lp.add_row(coeffs, RowKind::Le, Rational::zero());
        }
        let c = |x: usize, e| col[rep[Var::new(x, e).id()]];
        for a in &self.cs.linear {
            let Atom::UnitSum(x) = *a else { continue };
            let mut coeffs: Vec<(usize, Rational)> = Vec::new();
            for (e, s) in [(TopRight, 1), (TopLeft, -1), (BottomRight, 1), (BottomLeft, -1)] {
                coeffs.push((c(x, e), int(s)));
            }
            lp.add_row(coeffs, RowKind::Eq, int(2));
        }
        lp.add_row(vec![(delta, one.clone())], RowKind::Le, one.clone());
        lp.maximize(vec![(delta, one)]);
        match lp.solve() {
            LpOutcome::Optimal { value, x } if value.is_positive() => {
                Some((0..g.len()).map(|v| x[col[rep[v]]].clone()).collect())
            }
            _ => None,
        }
    }
}

#[cfg(feature = "parallel")]
fn combine(results: Vec<NodeResult>) -> NodeResult {
    let mut aborted = false;
    for r in results {
        match r {
            NodeResult::Sat(x) => return NodeResult::Sat(x),
            NodeResult::Aborted => aborted = true,
            NodeResult::Unsat => {}
        }
    }
    if aborted {
        NodeResult::Aborted
    } else {
        NodeResult::Unsat
    }
}
