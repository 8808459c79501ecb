//! One-shot reproduction of every claim about the corpus orders.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::autonomy::{autonomous_sets, graph_property_holds, reversal_closure};
use crate::corpus::{jaw_chains, load_corpus, CorpusEntry, JAW_ORDER};
use crate::embed::is_isomorphic;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::solver::{
    certify_unit_impossible_by_nesting, forced, forced_disjunction, parse_fact, solve_poset, Mode, SolveOptions,
    SolveResult,
};

/// Orders in a reversal closure are capped at this many.
pub const CLOSURE_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl ClaimStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimStatus::Pass => "pass",
            ClaimStatus::Fail => "fail",
            ClaimStatus::Inconclusive => "inconclusive",
        }
    }

    fn from_flag(ok: bool) -> Self {
        if ok {
            ClaimStatus::Pass
        } else {
            ClaimStatus::Fail
        }
    }

    /// Fail dominates pass; an unknown part makes the whole unknown unless
    /// something already failed.
    fn and(self, other: ClaimStatus) -> ClaimStatus {
        use ClaimStatus::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClaimRecord {
    pub id: &'static str,
    /// Short description of what is claimed.
    pub anchor: &'static str,
    pub mode: Mode,
    pub status: ClaimStatus,
    pub detail: String,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl ClaimRecord {
    pub fn machine_line(&self) -> String {
        format!(
            "claim={} status={} nodes={} ms={}",
            self.id,
            self.status.as_str(),
            self.nodes,
            self.elapsed.as_millis()
        )
    }
}

/// Claim ids in the order they are run.
pub const CLAIMS: [&str; 10] = [
    "jaw-sat",
    "jaw-forcing",
    "improper-containment",
    "improper-proper-unsat",
    "pnu-proper-sat",
    "pnu-unit-unsat",
    "improper-modules",
    "pnu-modules",
    "improper-closure",
    "pnu-closure",
];

#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub claims: Vec<ClaimRecord>,
}

impl VerificationReport {
    pub fn status(&self) -> ClaimStatus {
        if self.claims.iter().any(|c| c.status == ClaimStatus::Inconclusive) {
            ClaimStatus::Inconclusive
        } else if self.claims.iter().any(|c| c.status == ClaimStatus::Fail) {
            ClaimStatus::Fail
        } else {
            ClaimStatus::Pass
        }
    }

    /// 0 all pass, 1 some claim fails, 2 something was inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            ClaimStatus::Pass => 0,
            ClaimStatus::Fail => 1,
            ClaimStatus::Inconclusive => 2,
        }
    }

    pub fn get(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn machine(&self) -> String {
        self.claims.iter().map(|c| c.machine_line() + "\n").collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.claims {
            writeln!(
                f,
                "[{:>12}] {:<22} mode={:<11} {} ({})",
                c.status.as_str(),
                c.id,
                c.mode.as_str(),
                c.anchor,
                c.detail
            )?;
        }
        write!(f, "overall: {}", self.status().as_str())
    }
}

/// The three corpus entries, loaded and validated.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub jaw: CorpusEntry,
    pub improper: CorpusEntry,
    pub pnu: CorpusEntry,
}

impl Corpus {
    pub fn builtin() -> Result<Self> {
        Ok(Corpus {
            jaw: load_corpus("jaw")?,
            improper: load_corpus("improper")?,
            pnu: load_corpus("pnu")?,
        })
    }
}

/// Runs every claim in `CLAIMS` on the built-in corpus.
pub fn verify_paper(opts: &SolveOptions) -> Result<VerificationReport> {
    Ok(verify_corpus(&Corpus::builtin()?, opts))
}

struct Tally {
    started: Instant,
    nodes: u64,
}

impl Tally {
    fn new() -> Self {
        Tally {
            started: Instant::now(),
            nodes: 0,
        }
    }

    fn solve(&mut self, r: SolveResult) -> SolveResult {
        self.nodes += r.stats.nodes;
        r
    }
}

fn solved(r: &SolveResult, want_sat: bool) -> ClaimStatus {
    if r.is_sat() {
        ClaimStatus::from_flag(want_sat)
    } else if r.is_unsat() {
        ClaimStatus::from_flag(!want_sat)
    } else {
        ClaimStatus::Inconclusive
    }
}

fn forced_status(holds: Option<bool>, want: bool) -> ClaimStatus {
    match holds {
        Some(h) => ClaimStatus::from_flag(h == want),
        None => ClaimStatus::Inconclusive,
    }
}

fn names(sets: &[Vec<&str>]) -> Vec<Vec<String>> {
    sets.iter().map(|s| s.iter().map(|x| x.to_string()).collect()).collect()
}

fn check_modules(e: &CorpusEntry) -> (ClaimStatus, String) {
    match autonomous_sets(&e.poset, true) {
        Ok(sets) => {
            let got: Vec<Vec<String>> = sets.into_iter().map(|s| s.names).collect();
            let mut a = got.clone();
            let mut b = names(&e.expected_modules);
            a.iter_mut().for_each(|s| s.sort());
            b.iter_mut().for_each(|s| s.sort());
            a.sort();
            b.sort();
            let fmt = |v: &[Vec<String>]| {
                v.iter()
                    .map(|s| format!("{{{}}}", s.join(",")))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            (
                ClaimStatus::from_flag(a == b),
                format!("found {}; expected {}", fmt(&got), fmt(&b)),
            )
        }
        Err(e) => (ClaimStatus::Fail, e.to_string()),
    }
}

fn check_closure(p: &Poset, check: impl Fn(&Poset) -> Result<bool> + Sync) -> (ClaimStatus, String) {
    let members = match reversal_closure(p, CLOSURE_LIMIT) {
        Ok(m) => m,
        Err(e) => return (ClaimStatus::Fail, e.to_string()),
    };
    let iso = members.iter().all(|q| is_isomorphic(p, q));
    match graph_property_holds(p, CLOSURE_LIMIT, check) {
        Ok(h) => (
            ClaimStatus::from_flag(iso && h),
            format!("{} orders, all isomorphic: {iso}, property on all: {h}", members.len()),
        ),
        Err(Error::Inconclusive) => (ClaimStatus::Inconclusive, format!("{} orders", members.len())),
        Err(e) => (ClaimStatus::Fail, e.to_string()),
    }
}

fn decided(r: &SolveResult) -> Result<bool> {
    if r.is_sat() {
        Ok(true)
    } else if r.is_unsat() {
        Ok(false)
    } else {
        Err(Error::Inconclusive)
    }
}

/// Runs every claim on an already validated corpus.
pub fn verify_corpus(c: &Corpus, opts: &SolveOptions) -> VerificationReport {
    let mut out = VerificationReport::default();
    let mut push =
        |id: &'static str, anchor: &'static str, mode: Mode, t: Tally, status: ClaimStatus, detail: String| {
            out.claims.push(ClaimRecord {
                id,
                anchor,
                mode,
                status,
                detail,
                nodes: t.nodes,
                elapsed: t.started.elapsed(),
            });
        };

    // Jaw: representable.
    let mut t = Tally::new();
    let jaw = &c.jaw.poset;
    let r = t.solve(solve_poset(jaw, Mode::Any, opts));
    let valid = r.witness().is_none_or(|w| w.represents(jaw).unwrap_or(false));
    let st = solved(&r, true).and(ClaimStatus::from_flag(valid));
    push(
        "jaw-sat",
        "the jaw has a trapezoid representation",
        Mode::Any,
        t,
        st,
        r.to_string(),
    );

    // Jaw: one of the two mirrored chains holds, neither alone.
    let mut t = Tally::new();
    let [bottom, top] = jaw_chains(jaw, &JAW_ORDER).expect("jaw names");
    let sym = SolveOptions {
        break_vertical_symmetry: true,
        ..opts.clone()
    };
    let both = forced_disjunction(jaw, Mode::Any, &[bottom.clone(), top.clone()], &sym);
    let b = forced(jaw, Mode::Any, &bottom, opts);
    let tp = forced(jaw, Mode::Any, &top, opts);
    t.nodes += both.stats.nodes + b.stats.nodes + tp.stats.nodes;
    let st = forced_status(both.holds, true)
        .and(forced_status(b.holds, false))
        .and(forced_status(tp.holds, false));
    push(
        "jaw-forcing",
        "every representation has one of the two mirrored chains",
        Mode::Any,
        t,
        st,
        format!(
            "either: {}, bottom alone: {}, top alone: {}",
            both.status(),
            b.status(),
            tp.status()
        ),
    );

    // Improper: representable, and N sits inside 2 on both baselines.
    let mut t = Tally::new();
    let imp = &c.improper.poset;
    let r = t.solve(solve_poset(imp, Mode::Any, opts));
    let fact = parse_fact(imp, "l(2)<=l(N),r(N)<=r(2),L(2)<=L(N),R(N)<=R(2)").expect("improper names");
    let f = forced(imp, Mode::Any, &fact, opts);
    t.nodes += f.stats.nodes;
    let st = solved(&r, true).and(forced_status(f.holds, true));
    push(
        "improper-containment",
        "N is contained in 2 in every representation",
        Mode::Any,
        t,
        st,
        format!("representable: {}, containment: {}", r.status(), f.status()),
    );

    // Improper: no proper representation (equality branch on).
    let mut t = Tally::new();
    let r = t.solve(solve_poset(imp, Mode::Proper, opts));
    let st = solved(&r, false);
    push(
        "improper-proper-unsat",
        "the improper order has no proper representation",
        Mode::Proper,
        t,
        st,
        r.to_string(),
    );

    // Pnu: proper representation exists.
    let mut t = Tally::new();
    let pnu = &c.pnu.poset;
    let r = t.solve(solve_poset(pnu, Mode::Proper, opts));
    let valid = r
        .witness()
        .is_none_or(|w| w.is_proper() && w.represents(pnu).unwrap_or(false));
    let st = solved(&r, true).and(ClaimStatus::from_flag(valid));
    push(
        "pnu-proper-sat",
        "the pnu order has a proper representation",
        Mode::Proper,
        t,
        st,
        r.to_string(),
    );

    // Pnu: no unit representation, by search and by the nesting argument.
    let mut t = Tally::new();
    let r = t.solve(solve_poset(pnu, Mode::Unit, opts));
    let (nest_st, nest_detail) = match certify_unit_impossible_by_nesting(pnu, &["x", "y", "z"], "2", "3", opts) {
        Ok(n) => {
            t.nodes += n.nodes;
            (ClaimStatus::from_flag(n.success()), n.summary())
        }
        Err(Error::Inconclusive) => (ClaimStatus::Inconclusive, "nesting inconclusive".into()),
        Err(e) => (ClaimStatus::Fail, e.to_string()),
    };
    let st = solved(&r, false).and(nest_st);
    push(
        "pnu-unit-unsat",
        "the pnu order has no unit representation",
        Mode::Unit,
        t,
        st,
        format!("search: {}; nesting: {}", r.status(), nest_detail),
    );

    for (id, e) in [("improper-modules", &c.improper), ("pnu-modules", &c.pnu)] {
        let t = Tally::new();
        let (st, detail) = check_modules(e);
        push(id, "nontrivial autonomous sets", Mode::Any, t, st, detail);
    }

    // Module reversals keep the graph; the properties must hold throughout.
    let nodes = AtomicU64::new(0);
    let run = |q: &Poset, m: Mode| {
        let r = solve_poset(q, m, opts);
        nodes.fetch_add(r.stats.nodes, Ordering::Relaxed);
        decided(&r)
    };
    let mut t = Tally::new();
    let (st, detail) = check_closure(imp, |q| Ok(!run(q, Mode::Proper)?));
    t.nodes = nodes.swap(0, Ordering::Relaxed);
    push(
        "improper-closure",
        "every order with the same graph is improper",
        Mode::Proper,
        t,
        st,
        detail,
    );
    let mut t = Tally::new();
    let (st, detail) = check_closure(pnu, |q| Ok(run(q, Mode::Proper)? && !run(q, Mode::Unit)?));
    t.nodes = nodes.swap(0, Ordering::Relaxed);
    push(
        "pnu-closure",
        "every order with the same graph is proper but not unit",
        Mode::Unit,
        t,
        st,
        detail,
    );

    out
}
