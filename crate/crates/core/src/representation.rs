//! Trapezoid representations: one closed top interval `[L, R]` and one
//! closed bottom interval `[l, r]` per element, baselines at heights 1 and 0.
//!
//! `x < y` in the induced order iff `R(x) < L(y)` and `r(x) < l(y)`.
//! Intervals that share a single point intersect, so touching trapezoids
//! are incomparable.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poset::{bit, Poset};
use crate::rational::{format_rational, Rational};

/// One of the four endpoints of a trapezoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    /// Left end of the top interval.
    TopLeft,
    /// Right end of the top interval.
    TopRight,
    /// Left end of the bottom interval.
    BottomLeft,
    /// Right end of the bottom interval.
    BottomRight,
}

impl Endpoint {
    pub const ALL: [Endpoint; 4] = [
        Endpoint::TopLeft,
        Endpoint::TopRight,
        Endpoint::BottomLeft,
        Endpoint::BottomRight,
    ];

    /// `L`, `R`, `l`, `r`.
    pub fn symbol(self) -> char {
        match self {
            Endpoint::TopLeft => 'L',
            Endpoint::TopRight => 'R',
            Endpoint::BottomLeft => 'l',
            Endpoint::BottomRight => 'r',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        Some(match c {
            'L' => Endpoint::TopLeft,
            'R' => Endpoint::TopRight,
            'l' => Endpoint::BottomLeft,
            'r' => Endpoint::BottomRight,
            _ => return None,
        })
    }

    /// Same side of the interval on the other baseline.
    pub fn flipped(self) -> Self {
        match self {
            Endpoint::TopLeft => Endpoint::BottomLeft,
            Endpoint::TopRight => Endpoint::BottomRight,
            Endpoint::BottomLeft => Endpoint::TopLeft,
            Endpoint::BottomRight => Endpoint::TopRight,
        }
    }

    pub fn offset(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Option<Self> {
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn len(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Every point of `self` lies left of every point of `other`.
    pub fn precedes(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// Convex hull of a top and a bottom interval.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trapezoid {
    pub top: Interval,
    pub bottom: Interval,
}

/// Base lengths `t = R - L` and `b = r - l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseLengths {
    pub top: Rational,
    pub bottom: Rational,
}

impl BaseLengths {
    pub fn sum(&self) -> Rational {
        &self.top + &self.bottom
    }

    /// Area with baseline distance 1.
    pub fn area(&self) -> Rational {
        self.sum() / Rational::from_integer(2.into())
    }
}

impl Trapezoid {
    /// From `L, R, l, r`; `None` if an interval is reversed.
    pub fn new(tl: Rational, tr: Rational, bl: Rational, br: Rational) -> Option<Self> {
        Some(Trapezoid {
            top: Interval::new(tl, tr)?,
            bottom: Interval::new(bl, br)?,
        })
    }

    pub fn from_ints(tl: i64, tr: i64, bl: i64, br: i64) -> Option<Self> {
        use crate::rational::int;
        Self::new(int(tl), int(tr), int(bl), int(br))
    }

    pub fn endpoint(&self, e: Endpoint) -> &Rational {
        match e {
            Endpoint::TopLeft => &self.top.lo,
            Endpoint::TopRight => &self.top.hi,
            Endpoint::BottomLeft => &self.bottom.lo,
            Endpoint::BottomRight => &self.bottom.hi,
        }
    }

    pub fn lengths(&self) -> BaseLengths {
        BaseLengths {
            top: self.top.len(),
            bottom: self.bottom.len(),
        }
    }

    /// Every point of `self` is left of `other` and they are disjoint.
    pub fn precedes(&self, other: &Trapezoid) -> bool {
        self.top.precedes(&other.top) && self.bottom.precedes(&other.bottom)
    }

    /// `other ⊆ self` as point sets.
    pub fn contains(&self, other: &Trapezoid) -> bool {
        self.top.contains(&other.top) && self.bottom.contains(&other.bottom)
    }

    pub fn flipped(&self) -> Trapezoid {
        Trapezoid {
            top: self.bottom.clone(),
            bottom: self.top.clone(),
        }
    }

    fn map(&self, f: &impl Fn(&Rational) -> Rational) -> Trapezoid {
        Trapezoid {
            top: Interval {
                lo: f(&self.top.lo),
                hi: f(&self.top.hi),
            },
            bottom: Interval {
                lo: f(&self.bottom.lo),
                hi: f(&self.bottom.hi),
            },
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TrapezoidRepresentation {
    names: Vec<String>,
    traps: Vec<Trapezoid>,
}

impl TrapezoidRepresentation {
    pub fn new(entries: Vec<(String, Trapezoid)>) -> Result<Self> {
        let mut names = Vec::with_capacity(entries.len());
        let mut traps = Vec::with_capacity(entries.len());
        for (n, t) in entries {
            if names.contains(&n) {
                return Err(Error::DuplicateElement(n));
            }
            names.push(n);
            traps.push(t);
        }
        if names.len() > Poset::MAX_ELEMENTS {
            return Err(Error::TooLarge(names.len(), Poset::MAX_ELEMENTS));
        }
        Ok(TrapezoidRepresentation { names, traps })
    }

    pub fn empty() -> Self {
        TrapezoidRepresentation {
            names: Vec::new(),
            traps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn trapezoids(&self) -> &[Trapezoid] {
        &self.traps
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Trapezoid)> {
        self.names.iter().map(String::as_str).zip(self.traps.iter())
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn get(&self, name: &str) -> Result<&Trapezoid> {
        Ok(&self.traps[self.index_of(name)?])
    }

    pub fn lengths(&self, name: &str) -> Result<BaseLengths> {
        Ok(self.get(name)?.lengths())
    }

    fn order_by(&self, lt: impl Fn(&Trapezoid, &Trapezoid) -> bool) -> Poset {
        let succ = self
            .traps
            .iter()
            .map(|a| {
                self.traps
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| lt(a, b))
                    .fold(0, |m, (j, _)| m | bit(j))
            })
            .collect();
        Poset::from_masks(self.names.clone(), succ).expect("interval-induced relations are strict orders")
    }

    /// The trapezoid order.
    pub fn induced_order(&self) -> Poset {
        self.order_by(Trapezoid::precedes)
    }

    pub fn top_interval_order(&self) -> Poset {
        self.order_by(|a, b| a.top.precedes(&b.top))
    }

    pub fn bottom_interval_order(&self) -> Poset {
        self.order_by(|a, b| a.bottom.precedes(&b.bottom))
    }

    /// `T_y ⊆ T_x`.
    pub fn trapezoid_contains(&self, x: &str, y: &str) -> Result<bool> {
        Ok(self.get(x)?.contains(self.get(y)?))
    }

    /// First ordered pair `(x, y)` with `T_y` strictly inside `T_x`.
    pub fn proper_containment(&self) -> Option<(&str, &str)> {
        for (i, a) in self.traps.iter().enumerate() {
            for (j, b) in self.traps.iter().enumerate() {
                if i != j && a.contains(b) && a != b {
                    return Some((&self.names[i], &self.names[j]));
                }
            }
        }
        None
    }

    /// No trapezoid strictly contains another; identical copies are allowed.
    pub fn is_proper(&self) -> bool {
        self.proper_containment().is_none()
    }

    /// Max minus min of `t(x) + b(x)`; zero for empty representations.
    pub fn unit_defect(&self) -> Rational {
        let sums: Vec<Rational> = self.traps.iter().map(|t| t.lengths().sum()).collect();
        match (sums.iter().max(), sums.iter().min()) {
            (Some(hi), Some(lo)) => hi - lo,
            _ => Rational::zero(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.unit_defect().is_zero()
    }

    /// Rescales horizontally so that every base-length sum is exactly 2.
    pub fn normalize_unit(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotUnit);
        }
        let Some(first) = self.traps.first() else {
            return Ok(self.clone());
        };
        let common = first.lengths().sum();
        if common.is_zero() {
            return Err(Error::DegenerateScale);
        }
        let factor = Rational::from_integer(2.into()) / common;
        Ok(self.map_horizontal(&factor, &Rational::zero()))
    }

    /// Applies `x ↦ alpha·x + beta` to every coordinate. A negative `alpha`
    /// mirrors the picture, which swaps left and right endpoints.
    pub fn map_horizontal(&self, alpha: &Rational, beta: &Rational) -> Self {
        let f = |v: &Rational| alpha * v + beta;
        let traps = self
            .traps
            .iter()
            .map(|t| {
                let m = t.map(&f);
                if alpha.is_negative() {
                    Trapezoid {
                        top: Interval {
                            lo: m.top.hi,
                            hi: m.top.lo,
                        },
                        bottom: Interval {
                            lo: m.bottom.hi,
                            hi: m.bottom.lo,
                        },
                    }
                } else {
                    m
                }
            })
            .collect();
        TrapezoidRepresentation {
            names: self.names.clone(),
            traps,
        }
    }

    /// Swaps the two baselines.
    pub fn flipped(&self) -> Self {
        TrapezoidRepresentation {
            names: self.names.clone(),
            traps: self.traps.iter().map(Trapezoid::flipped).collect(),
        }
    }

    /// True iff the induced order equals `p` exactly.
    pub fn represents(&self, p: &Poset) -> Result<bool> {
        let induced = self.induced_order();
        induced.alignment(p)?;
        Ok(induced == *p)
    }

    pub fn restriction<S: AsRef<str>>(&self, subset: &[S]) -> Result<Self> {
        let entries = subset
            .iter()
            .map(|s| Ok((s.as_ref().to_string(), self.get(s.as_ref())?.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

impl fmt::Debug for TrapezoidRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (n, t) in self.iter() {
            m.entry(
                &n,
                &format_args!(
                    "[{}, {}] / [{}, {}]",
                    format_rational(&t.top.lo),
                    format_rational(&t.top.hi),
                    format_rational(&t.bottom.lo),
                    format_rational(&t.bottom.hi)
                ),
            );
        }
        m.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn rep(items: &[(&str, [i64; 4])]) -> TrapezoidRepresentation {
        TrapezoidRepresentation::new(
            items
                .iter()
                .map(|(n, c)| (n.to_string(), Trapezoid::from_ints(c[0], c[1], c[2], c[3]).unwrap()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn disjoint_left_precedes() {
        let r = rep(&[("x", [0, 1, 0, 1]), ("y", [2, 3, 2, 3])]);
        assert!(r.induced_order().precedes("x", "y").unwrap());
    }

    #[test]
    fn crossing_trapezoids_are_incomparable() {
        let r = rep(&[("x", [0, 1, 2, 3]), ("y", [2, 3, 0, 1])]);
        assert!(r.induced_order().incomparable("x", "y").unwrap());
        assert!(r.top_interval_order().precedes("x", "y").unwrap());
        assert!(r.bottom_interval_order().precedes("y", "x").unwrap());
    }

    #[test]
    fn touching_counts_as_intersecting() {
        let r = rep(&[("x", [0, 1, 0, 1]), ("y", [1, 2, 2, 3])]);
        assert!(r.induced_order().incomparable("x", "y").unwrap());
    }

    #[test]
    fn identical_intervals_give_antichain() {
        let r = rep(&[("a", [0, 1, 0, 1]), ("b", [0, 1, 0, 1]), ("c", [0, 1, 0, 1])]);
        assert_eq!(r.top_interval_order(), Poset::antichain(&["a", "b", "c"]).unwrap());
    }

    #[test]
    fn containment_cases() {
        let r = rep(&[("x", [0, 3, 0, 3]), ("y", [1, 2, 1, 2])]);
        assert!(r.trapezoid_contains("x", "y").unwrap());
        assert!(!r.is_proper());
        let same = rep(&[("x", [0, 1, 0, 1]), ("y", [0, 1, 0, 1])]);
        assert!(same.trapezoid_contains("x", "y").unwrap());
        assert!(same.is_proper());
        let out = rep(&[("x", [0, 3, 0, 1]), ("y", [1, 2, 0, 2])]);
        assert!(!out.trapezoid_contains("x", "y").unwrap());
        assert!(r.trapezoid_contains("x", "q").is_err());
    }

    #[test]
    fn unit_checks() {
        let rects = rep(&[("a", [0, 1, 0, 1]), ("b", [5, 6, 5, 6])]);
        assert!(rects.is_unit());
        assert!(rects.unit_defect().is_zero());

        let skew = TrapezoidRepresentation::new(vec![
            (
                "a".into(),
                Trapezoid::new(int(0), ratio(3, 2), int(0), ratio(1, 2)).unwrap(),
            ),
            (
                "b".into(),
                Trapezoid::new(int(4), ratio(9, 2), int(4), ratio(11, 2)).unwrap(),
            ),
        ])
        .unwrap();
        assert!(skew.is_unit());

        let mixed = TrapezoidRepresentation::new(vec![
            ("a".into(), Trapezoid::from_ints(0, 1, 0, 1).unwrap()),
            (
                "b".into(),
                Trapezoid::new(int(3), ratio(7, 2), int(3), ratio(7, 2)).unwrap(),
            ),
        ])
        .unwrap();
        assert!(!mixed.is_unit());
        assert_eq!(mixed.unit_defect(), int(1));
    }

    #[test]
    fn normalize_rescales_to_two() {
        let r = rep(&[("a", [0, 2, 0, 2]), ("b", [3, 4, 3, 6])]);
        let n = r.normalize_unit().unwrap();
        assert_eq!(n.lengths("a").unwrap().sum(), int(2));
        assert_eq!(n.get("b").unwrap().bottom.hi, int(3));
        assert_eq!(n.induced_order(), r.induced_order());

        let already = rep(&[("a", [0, 1, 0, 1])]);
        assert_eq!(already.normalize_unit().unwrap(), already);

        assert_eq!(
            rep(&[("a", [0, 1, 0, 1]), ("b", [0, 2, 0, 2])]).normalize_unit(),
            Err(Error::NotUnit)
        );
        assert_eq!(
            rep(&[("a", [0, 0, 1, 1])]).normalize_unit(),
            Err(Error::DegenerateScale)
        );
    }

    #[test]
    fn represents_checks_exact_order() {
        let r = rep(&[("a", [0, 1, 0, 1]), ("b", [2, 3, 2, 3])]);
        assert!(r.represents(&Poset::chain(&["a", "b"]).unwrap()).unwrap());
        assert!(!r.represents(&Poset::antichain(&["a", "b"]).unwrap()).unwrap());
        assert!(r.represents(&Poset::chain(&["a", "c"]).unwrap()).is_err());
    }

    #[test]
    fn reversed_interval_rejected() {
        assert!(Trapezoid::from_ints(1, 0, 0, 1).is_none());
    }

    #[test]
    fn mirror_map_reverses_order() {
        let r = rep(&[("a", [0, 1, 0, 1]), ("b", [2, 3, 2, 3])]);
        let m = r.map_horizontal(&int(-1), &int(0));
        assert!(m.induced_order().precedes("b", "a").unwrap());
        assert_eq!(m.induced_order(), r.induced_order().dual());
    }
}
