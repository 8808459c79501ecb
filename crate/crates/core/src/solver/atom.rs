//! Endpoint variables, atoms and the fact grammar
//! `<endpoint>(<elem>) <op> <endpoint>(<elem>)` with op in `<`, `<=`, `=`.

use std::fmt;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::representation::Endpoint;

/// Endpoint `end` of element `elem`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub elem: usize,
    pub end: Endpoint,
}

impl Var {
    pub fn new(elem: usize, end: Endpoint) -> Self {
        Var { elem, end }
    }

    pub fn id(self) -> usize {
        4 * self.elem + self.end.offset()
    }

    pub fn from_id(id: usize) -> Self {
        Var {
            elem: id / 4,
            end: Endpoint::ALL[id % 4],
        }
    }

    pub fn flipped(self) -> Self {
        Var {
            elem: self.elem,
            end: self.end.flipped(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Lt(Var, Var),
    Le(Var, Var),
    Eq(Var, Var),
    /// `(R(x) - L(x)) + (r(x) - l(x)) = 2`.
    UnitSum(usize),
}

impl Atom {
    pub fn flipped(self) -> Atom {
        match self {
            Atom::Lt(u, v) => Atom::Lt(u.flipped(), v.flipped()),
            Atom::Le(u, v) => Atom::Le(u.flipped(), v.flipped()),
            Atom::Eq(u, v) => Atom::Eq(u.flipped(), v.flipped()),
            Atom::UnitSum(x) => Atom::UnitSum(x),
        }
    }

    /// Renames the elements, e.g. along an embedding.
    pub fn map_elems(self, f: impl Fn(usize) -> usize) -> Atom {
        let m = |v: Var| Var {
            elem: f(v.elem),
            end: v.end,
        };
        match self {
            Atom::Lt(u, v) => Atom::Lt(m(u), m(v)),
            Atom::Le(u, v) => Atom::Le(m(u), m(v)),
            Atom::Eq(u, v) => Atom::Eq(m(u), m(v)),
            Atom::UnitSum(x) => Atom::UnitSum(f(x)),
        }
    }

    /// The negation as a disjunction of atoms. Linear equalities are never
    /// negated.
    pub fn negation(self) -> Vec<Atom> {
        match self {
            Atom::Lt(u, v) => vec![Atom::Le(v, u)],
            Atom::Le(u, v) => vec![Atom::Lt(v, u)],
            Atom::Eq(u, v) => vec![Atom::Lt(u, v), Atom::Lt(v, u)],
            Atom::UnitSum(_) => panic!("linear equalities have no negation here"),
        }
    }

    pub fn display<'a>(&self, p: &'a Poset) -> AtomDisplay<'a> {
        AtomDisplay { atom: *self, poset: p }
    }
}

pub struct AtomDisplay<'a> {
    atom: Atom,
    poset: &'a Poset,
}

impl fmt::Display for AtomDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |x: Var| format!("{}({})", x.end.symbol(), self.poset.name(x.elem));
        match self.atom {
            Atom::Lt(a, b) => write!(f, "{}<{}", v(a), v(b)),
            Atom::Le(a, b) => write!(f, "{}<={}", v(a), v(b)),
            Atom::Eq(a, b) => write!(f, "{}={}", v(a), v(b)),
            Atom::UnitSum(x) => write!(f, "t({0})+b({0})=2", self.poset.name(x)),
        }
    }
}

/// A conjunction of atoms.
pub type Literal = Vec<Atom>;

/// A disjunction of literals.
pub type Clause = Vec<Literal>;

/// A fact is a conjunction of ordering atoms.
pub type Fact = Vec<Atom>;

/// The clause expressing that `fact` fails.
pub fn negate_fact(fact: &[Atom]) -> Clause {
    fact.iter().flat_map(|a| a.negation()).map(|a| vec![a]).collect()
}

pub fn flip_fact(fact: &[Atom]) -> Fact {
    fact.iter().map(|a| a.flipped()).collect()
}

/// Parses comma-separated comparisons such as `R(E)<L(2),L(2)<=R(2)`.
/// Chains like `r(B)<l(C)<=r(1)` are accepted and split into their links.
pub fn parse_fact(p: &Poset, text: &str) -> Result<Fact> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part: String = part.chars().filter(|c| !c.is_whitespace()).collect();
        if part.is_empty() {
            continue;
        }
        let mut rest = part.as_str();
        let mut left = parse_var(p, &mut rest)?;
        if rest.is_empty() {
            return Err(fact_err(&part, "expected a comparison"));
        }
        while !rest.is_empty() {
            let op = if let Some(r) = rest.strip_prefix("<=") {
                rest = r;
                "<="
            } else if let Some(r) = rest.strip_prefix('<') {
                rest = r;
                "<"
            } else if let Some(r) = rest.strip_prefix('=') {
                rest = r;
                "="
            } else {
                return Err(fact_err(&part, "expected `<`, `<=` or `=`"));
            };
            let right = parse_var(p, &mut rest)?;
            out.push(match op {
                "<" => Atom::Lt(left, right),
                "<=" => Atom::Le(left, right),
                _ => Atom::Eq(left, right),
            });
            left = right;
        }
    }
    if out.is_empty() {
        return Err(fact_err(text, "empty fact"));
    }
    Ok(out)
}

fn parse_var(p: &Poset, rest: &mut &str) -> Result<Var> {
    let s = *rest;
    let mut chars = s.chars();
    let end = chars
        .next()
        .and_then(Endpoint::from_symbol)
        .ok_or_else(|| fact_err(s, "expected one of L, R, l, r"))?;
    let after = chars.as_str();
    let inner = after.strip_prefix('(').ok_or_else(|| fact_err(s, "expected `(`"))?;
    let close = inner.find(')').ok_or_else(|| fact_err(s, "expected `)`"))?;
    let name = &inner[..close];
    let elem = p.index_of(name)?;
    *rest = &inner[close + 1..];
    Ok(Var::new(elem, end))
}

fn fact_err(text: &str, msg: &str) -> Error {
    Error::Parse {
        line: 1,
        msg: format!("{msg} in `{text}`"),
    }
}

pub fn format_fact(p: &Poset, fact: &[Atom]) -> String {
    fact.iter()
        .map(|a| a.display(p).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jawish() -> Poset {
        Poset::new(&["E", "2", "D"], &[("E", "D")], true).unwrap()
    }

    #[test]
    fn parses_and_prints() {
        let p = jawish();
        let f = parse_fact(&p, "R(E)<L(2), L(2)<=R(2)").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(format_fact(&p, &f), "R(E)<L(2),L(2)<=R(2)");
        assert_eq!(parse_fact(&p, &format_fact(&p, &f)).unwrap(), f);
    }

    #[test]
    fn chains_split_into_links() {
        let p = jawish();
        let f = parse_fact(&p, "R(E)<L(2)<=R(2)<L(D)").unwrap();
        assert_eq!(format_fact(&p, &f), "R(E)<L(2),L(2)<=R(2),R(2)<L(D)");
    }

    #[test]
    fn rejects_bad_input() {
        let p = jawish();
        assert!(parse_fact(&p, "R(Q)<L(2)").is_err());
        assert!(parse_fact(&p, "X(E)<L(2)").is_err());
        assert!(parse_fact(&p, "R(E)").is_err());
        assert!(parse_fact(&p, "R(E)>L(2)").is_err());
        assert!(parse_fact(&p, "").is_err());
    }

    #[test]
    fn negation_shapes() {
        let (a, b) = (Var::new(0, Endpoint::TopRight), Var::new(1, Endpoint::TopLeft));
        assert_eq!(Atom::Lt(a, b).negation(), vec![Atom::Le(b, a)]);
        assert_eq!(Atom::Le(a, b).negation(), vec![Atom::Lt(b, a)]);
        assert_eq!(negate_fact(&[Atom::Eq(a, b)]).len(), 2);
        assert_eq!(Atom::Lt(a, b).flipped().flipped(), Atom::Lt(a, b));
    }

    #[test]
    fn var_ids_roundtrip() {
        for id in 0..40 {
            assert_eq!(Var::from_id(id).id(), id);
        }
    }
}
