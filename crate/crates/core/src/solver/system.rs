//! Compilation of a poset and a mode into a disjunctive constraint system.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::representation::Endpoint::{BottomLeft, BottomRight, TopLeft, TopRight};

use super::atom::{Atom, Clause, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Any,
    Proper,
    Unit,
    ProperUnit,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Any, Mode::Proper, Mode::Unit, Mode::ProperUnit];

    pub fn proper(self) -> bool {
        matches!(self, Mode::Proper | Mode::ProperUnit)
    }

    pub fn unit(self) -> bool {
        matches!(self, Mode::Unit | Mode::ProperUnit)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Any => "any",
            Mode::Proper => "proper",
            Mode::Unit => "unit",
            Mode::ProperUnit => "proper-unit",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        Ok(match s {
            "any" => Mode::Any,
            "proper" => Mode::Proper,
            "unit" => Mode::Unit,
            "proper-unit" | "proper+unit" => Mode::ProperUnit,
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("unknown mode `{s}`"),
                });
            }
        })
    }
}

/// Where a clause came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClauseKind {
    /// `y` does not lie entirely right of `x`: `L(y) ≤ R(x) ∨ l(y) ≤ r(x)`.
    Incomparability {
        x: usize,
        y: usize,
    },
    /// `T_x` is not properly inside `T_y`.
    NoContainment {
        x: usize,
        y: usize,
    },
    Extra,
}

#[derive(Debug, Clone, Copy)]
pub struct CompileOptions {
    /// Keep the all-endpoints-equal literal in no-containment clauses.
    /// Dropping it is only sound when looking for a witness.
    pub equality_branch: bool,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions { equality_branch: true }
    }
}

#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub poset: Poset,
    pub mode: Mode,
    /// Precedence atoms `R(x) < L(y)` and `r(x) < l(y)` for each `x ≺ y`.
    pub hard: Vec<Atom>,
    /// `L(x) ≤ R(x)` and `l(x) ≤ r(x)`.
    pub base: Vec<Atom>,
    /// One unit-sum equality per element in unit modes.
    pub linear: Vec<Atom>,
    pub clauses: Vec<Clause>,
    pub kinds: Vec<ClauseKind>,
}

impl ConstraintSystem {
    pub fn num_vars(&self) -> usize {
        4 * self.poset.len()
    }

    /// Every vertical-flip image of the system is again in the system, so a
    /// first incomparability branch may be fixed to its bottom literal.
    pub fn is_flip_symmetric(&self) -> bool {
        let mut ours: Vec<Vec<Vec<Atom>>> = self.clauses.iter().map(canonical).collect();
        ours.sort_by_key(|c| format!("{c:?}"));
        let mut theirs: Vec<Vec<Vec<Atom>>> = self
            .clauses
            .iter()
            .map(|c| {
                let f: Clause = c.iter().map(|l| l.iter().map(|a| a.flipped()).collect()).collect();
                canonical(&f)
            })
            .collect();
        theirs.sort_by_key(|c| format!("{c:?}"));
        ours == theirs
    }
}

fn canonical(c: &Clause) -> Vec<Vec<Atom>> {
    let mut lits: Vec<Vec<Atom>> = c
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_by_key(|a| format!("{a:?}"));
            l
        })
        .collect();
    lits.sort_by_key(|l| format!("{l:?}"));
    lits
}

pub fn compile(p: &Poset, mode: Mode, extra: &[Clause]) -> ConstraintSystem {
    compile_with(p, mode, extra, CompileOptions::default())
}

pub fn compile_with(p: &Poset, mode: Mode, extra: &[Clause], opts: CompileOptions) -> ConstraintSystem {
    let v = Var::new;
    let n = p.len();
    let mut hard = Vec::new();
    for (x, y) in p.comparable_pairs() {
        hard.push(Atom::Lt(v(x, TopRight), v(y, TopLeft)));
        hard.push(Atom::Lt(v(x, BottomRight), v(y, BottomLeft)));
    }
    let mut base = Vec::new();
    for x in 0..n {
        base.push(Atom::Le(v(x, TopLeft), v(x, TopRight)));
        base.push(Atom::Le(v(x, BottomLeft), v(x, BottomRight)));
    }
    let linear = if mode.unit() {
        (0..n).map(Atom::UnitSum).collect()
    } else {
        Vec::new()
    };

    let mut tagged: Vec<(Clause, ClauseKind)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x == y || !p.incomparable_idx(x, y) {
                continue;
            }
            tagged.push((
                vec![
                    vec![Atom::Le(v(y, TopLeft), v(x, TopRight))],
                    vec![Atom::Le(v(y, BottomLeft), v(x, BottomRight))],
                ],
                ClauseKind::Incomparability { x, y },
            ));
            if mode.proper() {
                let mut clause = vec![
                    vec![Atom::Lt(v(x, TopLeft), v(y, TopLeft))],
                    vec![Atom::Lt(v(y, TopRight), v(x, TopRight))],
                    vec![Atom::Lt(v(x, BottomLeft), v(y, BottomLeft))],
                    vec![Atom::Lt(v(y, BottomRight), v(x, BottomRight))],
                ];
                if opts.equality_branch {
                    clause.push(
                        [TopLeft, TopRight, BottomLeft, BottomRight]
                            .iter()
                            .map(|&e| Atom::Eq(v(x, e), v(y, e)))
                            .collect(),
                    );
                }
                tagged.push((clause, ClauseKind::NoContainment { x, y }));
            }
        }
    }
    // Elements with many comparabilities are the most constrained.
    let weight = |k: &ClauseKind| match *k {
        ClauseKind::Incomparability { x, y } | ClauseKind::NoContainment { x, y } => {
            let deg = |i: usize| (p.successors(i) | p.predecessors(i)).count_ones();
            deg(x) + deg(y)
        }
        ClauseKind::Extra => u32::MAX,
    };
    tagged.extend(extra.iter().cloned().map(|c| (c, ClauseKind::Extra)));
    tagged.sort_by_key(|(_, k)| std::cmp::Reverse(weight(k)));
    let (clauses, kinds) = tagged.into_iter().unzip();
    ConstraintSystem {
        poset: p.clone(),
        mode,
        hard,
        base,
        linear,
        clauses,
        kinds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_has_only_atoms() {
        let p = Poset::chain(&["a", "b"]).unwrap();
        let cs = compile(&p, Mode::Any, &[]);
        assert_eq!(cs.hard.len(), 2);
        assert_eq!(cs.base.len(), 4);
        assert!(cs.clauses.is_empty());
    }

    #[test]
    fn antichain_clause_counts() {
        let p = Poset::antichain(&["a", "b"]).unwrap();
        assert_eq!(compile(&p, Mode::Any, &[]).clauses.len(), 2);
        let proper = compile(&p, Mode::Proper, &[]);
        assert_eq!(proper.clauses.len(), 4);
        assert!(proper.linear.is_empty());
        let unit = compile(&p, Mode::ProperUnit, &[]);
        assert_eq!(unit.linear.len(), 2);
        let no_eq = compile_with(&p, Mode::Proper, &[], CompileOptions { equality_branch: false });
        assert!(no_eq.clauses.iter().all(|c| c.iter().all(|l| l.len() == 1)));
    }

    #[test]
    fn base_system_is_flip_symmetric() {
        let p = Poset::new(&["a", "b", "c"], &[("a", "b")], true).unwrap();
        assert!(compile(&p, Mode::Proper, &[]).is_flip_symmetric());
        let a = Var::new(0, TopLeft);
        let b = Var::new(1, TopLeft);
        let extra = vec![vec![vec![Atom::Le(a, b)]]];
        assert!(!compile(&p, Mode::Any, &extra).is_flip_symmetric());
    }

    #[test]
    fn modes_parse() {
        for m in Mode::ALL {
            assert_eq!(m.as_str().parse::<Mode>().unwrap(), m);
        }
        assert!("nope".parse::<Mode>().is_err());
    }
}
