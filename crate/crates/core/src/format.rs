//! Text formats.
//!
//! `.pos` (posets):
//!
//! ```text
//! # comment
//! elem a
//! elem b
//! rel a b      # a < b
//! ```
//!
//! Relations are closed transitively on load unless strict parsing is
//! requested. `.trep` (representations) has one `trap <name> <L> <R> <l> <r>`
//! line per element; coordinates are integers, `p/q`, or decimals.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poset::{ones, Poset};
use crate::rational::{format_rational, parse_rational};
use crate::representation::{Trapezoid, TrapezoidRepresentation};

fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses a `.pos` document, closing relations transitively.
pub fn parse_pos(text: &str) -> Result<Poset> {
    parse_pos_with(text, true)
}

/// Parses a `.pos` document. With `close == false`, non-transitive input is
/// rejected.
pub fn parse_pos_with(text: &str, close: bool) -> Result<Poset> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        match fields.as_slice() {
            ["elem", name] => {
                if index.contains_key(*name) {
                    return Err(parse_err(line, format!("duplicate element `{name}`")));
                }
                index.insert(name.to_string(), names.len());
                names.push(name.to_string());
            }
            ["rel", a, b] => {
                let i = *index
                    .get(*a)
                    .ok_or_else(|| parse_err(line, format!("unknown element `{a}`")))?;
                let j = *index
                    .get(*b)
                    .ok_or_else(|| parse_err(line, format!("unknown element `{b}`")))?;
                if i == j || reaches(&pairs, j, i) {
                    return Err(parse_err(line, format!("relation {a} < {b} closes a cycle")));
                }
                pairs.push((i, j, line));
            }
            _ => return Err(parse_err(line, format!("cannot parse `{body}`"))),
        }
    }
    if names.len() > Poset::MAX_ELEMENTS {
        return Err(Error::TooLarge(names.len(), Poset::MAX_ELEMENTS));
    }
    let named: Vec<(&str, &str)> = pairs
        .iter()
        .map(|&(i, j, _)| (names[i].as_str(), names[j].as_str()))
        .collect();
    Poset::new(&names, &named, close)
}

fn reaches(pairs: &[(usize, usize, usize)], from: usize, to: usize) -> bool {
    let mut stack = vec![from];
    let mut seen = vec![from];
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        for &(a, b, _) in pairs {
            if a == v && !seen.contains(&b) {
                seen.push(b);
                stack.push(b);
            }
        }
    }
    false
}

/// Writes a `.pos` document listing cover relations only.
pub fn write_pos(p: &Poset) -> String {
    let mut out = String::new();
    for n in p.names() {
        writeln!(out, "elem {n}").unwrap();
    }
    for i in 0..p.len() {
        for j in ones(p.successors(i)) {
            let covered = ones(p.successors(i)).any(|k| p.lt(k, j));
            if !covered {
                writeln!(out, "rel {} {}", p.name(i), p.name(j)).unwrap();
            }
        }
    }
    out
}

pub fn parse_trep(text: &str) -> Result<TrapezoidRepresentation> {
    let mut entries: Vec<(String, Trapezoid)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let ["trap", name, coords @ ..] = fields.as_slice() else {
            return Err(parse_err(line, format!("cannot parse `{body}`")));
        };
        if coords.len() != 4 {
            return Err(parse_err(line, "expected four coordinates L R l r"));
        }
        let mut vals = Vec::with_capacity(4);
        for c in coords {
            vals.push(parse_rational(c).ok_or_else(|| parse_err(line, format!("bad number `{c}`")))?);
        }
        if entries.iter().any(|(n, _)| n == name) {
            return Err(parse_err(line, format!("duplicate element `{name}`")));
        }
        let [tl, tr, bl, br]: [_; 4] = vals.try_into().expect("four values");
        let trap =
            Trapezoid::new(tl, tr, bl, br).ok_or_else(|| parse_err(line, format!("reversed interval for `{name}`")))?;
        entries.push((name.to_string(), trap));
    }
    TrapezoidRepresentation::new(entries)
}

pub fn write_trep(rep: &TrapezoidRepresentation) -> String {
    let mut out = String::new();
    for (n, t) in rep.iter() {
        writeln!(
            out,
            "trap {n} {} {} {} {}",
            format_rational(&t.top.lo),
            format_rational(&t.top.hi),
            format_rational(&t.bottom.lo),
            format_rational(&t.bottom.hi)
        )
        .unwrap();
    }
    out
}
