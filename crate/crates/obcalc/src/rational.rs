//! Exact rational arithmetic with `"p/q"` string serialization.
//!
//! Every rational quantity in this crate (fractional Dehn twist coefficients,
//! Euler measures, grading shifts, d3 values) is a [`Rat`]. There is no
//! floating point anywhere in the computational core.

use num::rational::Ratio;
use num::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An exact rational number, always stored in reduced form.
///
/// Rendered as `"p/q"` (or just `"p"` when the denominator is 1) in both
/// `Display` output and JSON.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(Ratio<i128>);

impl Rat {
    pub fn new(numer: i128, denom: i128) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(Ratio::new(numer, denom))
    }

    pub const fn zero() -> Self {
        Rat(Ratio::new_raw(0, 1))
    }

    pub const fn one() -> Self {
        Rat(Ratio::new_raw(1, 1))
    }

    pub fn from_int(n: i128) -> Self {
        Rat(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn square(&self) -> Self {
        Rat(self.0 * self.0)
    }

    pub fn recip(&self) -> Self {
        assert!(!self.0.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

// Debug matches Display; the reduced p/q form is the canonical one.
impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error from parsing a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {input:?}: expected `p` or `p/q` with q != 0")]
pub struct ParseRatError {
    pub input: String,
}

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseRatError { input: s.to_owned() };
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<i128>().map(Rat::from_int).map_err(|_| bad()),
            Some((p, q)) => {
                let p: i128 = p.trim().parse().map_err(|_| bad())?;
                let q: i128 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(Rat::new(p, q))
            }
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n as i128)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat(self.0 - rhs.0)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        self.0 -= rhs.0;
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), Add::add)
    }
}

/// `p/q` shorthand used throughout the tests.
pub fn rat(p: i128, q: i128) -> Rat {
    Rat::new(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_reduces() {
        assert_eq!(rat(2, 4).to_string(), "1/2");
        assert_eq!(rat(-3, 6).to_string(), "-1/2");
        assert_eq!(rat(4, 2).to_string(), "2");
        assert_eq!(rat(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-1", "1/2", "-55/72", "19/72"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn json_is_a_string() {
        let r = rat(-1, 3);
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"-1/3\"");
        let back: Rat = serde_json::from_str("\"-1/3\"").unwrap();
        assert_eq!(back, r);
    }
}
