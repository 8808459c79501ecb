//! Exact rational numbers and their text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p`, `p/q`, or a decimal `d.ddd` (read exactly as `p/10^k`).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{whole_digits}{frac}");
        let mut p: BigInt = digits.parse().ok()?;
        if negative {
            p = -p;
        }
        let q = num_traits::pow(BigInt::from(10), frac.len());
        return Some(Rational::new(p, q));
    }
    let p: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(p))
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Lossy conversion for drawing only.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64()
        .unwrap_or_else(|| if r.is_negative() { f64::MIN } else { f64::MAX })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("3"), Some(int(3)));
        assert_eq!(parse_rational("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1.x"), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn decimal_is_exact() {
        assert_eq!(parse_rational("0.1").unwrap() * int(10), int(1));
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_rational(&ratio(4, 6)), "2/3");
        assert_eq!(format_rational(&int(-7)), "-7");
    }
}
