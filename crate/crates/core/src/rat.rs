//! Exact rationals and extended orders.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rational on the grid `1/den`: returns the numerator, if `r * den` is an integer.
pub fn on_grid(r: &Rat, den: u64) -> Option<i64> {
    let scaled = r * Rat::from_integer(BigInt::from(den));
    if scaled.is_integer() {
        i64::try_from(scaled.to_integer()).ok()
    } else {
        None
    }
}

pub fn floor_i64(r: &Rat) -> i64 {
    i64::try_from(r.floor().to_integer()).expect("rational out of i64 range")
}

pub fn to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// A valuation: a rational order or `+∞` (identically zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(Rat),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Order::Finite(r) => Some(r),
            Order::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Order::Infinite)
    }
}

impl PartialOrd for Order {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Order {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => a.cmp(b),
            (Order::Finite(_), Order::Infinite) => Ordering::Less,
            (Order::Infinite, Order::Finite(_)) => Ordering::Greater,
            (Order::Infinite, Order::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(r) => f.write_str(&fmt_rat(r)),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("6/4"), Some(rat(3, 2)));
        assert_eq!(parse_rat("-7"), Some(int(-7)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(fmt_rat(&rat(-3, 6)), "-1/2");
    }

    #[test]
    fn order_is_total() {
        assert!(Order::Finite(rat(7, 4)) < Order::Infinite);
        assert!(Order::Finite(rat(3, 2)) < Order::Finite(rat(7, 4)));
    }

    #[test]
    fn grid() {
        assert_eq!(on_grid(&rat(7, 4), 4), Some(7));
        assert_eq!(on_grid(&rat(3, 2), 4), Some(6));
        assert_eq!(on_grid(&rat(1, 3), 4), None);
    }
}
