use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of the extended rationals `Q ∪ {∞}`.
///
/// Stored in lowest terms with a non-negative denominator; infinity is the
/// single representative `1/0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    num: i128,
    den: i128,
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("slope arithmetic overflow")
}

pub(crate) fn add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("slope arithmetic overflow")
}

impl Slope {
    pub const INFINITY: Slope = Slope { num: 1, den: 0 };
    pub const ZERO: Slope = Slope { num: 0, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Self> {
        if num == 0 && den == 0 {
            return Err(Error::ZeroOverZero);
        }
        Ok(Self::from_pair(num, den))
    }

    /// Builds a slope from a projective pair, which must not be `(0, 0)`.
    pub(crate) fn from_pair(num: i128, den: i128) -> Self {
        debug_assert!(num != 0 || den != 0);
        if den == 0 {
            return Self::INFINITY;
        }
        let g = gcd(num, den);
        let (num, den) = (num / g, den / g);
        if den < 0 {
            Slope { num: -num, den: -den }
        } else {
            Slope { num, den }
        }
    }

    pub fn integer(n: i128) -> Self {
        Slope { num: n, den: 1 }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn neg(self) -> Self {
        if self.is_infinite() {
            self
        } else {
            Slope { num: -self.num, den: self.den }
        }
    }

    /// Projective reciprocal: `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(self) -> Self {
        Self::from_pair(self.den, self.num)
    }

    pub fn add_int(self, k: i128) -> Self {
        if self.is_infinite() {
            self
        } else {
            Slope { num: add(self.num, mul(k, self.den)), den: self.den }
        }
    }

    /// Sum of two slopes; anything plus `∞` is `∞`.
    pub fn add(self, other: Slope) -> Self {
        if self.is_infinite() || other.is_infinite() {
            return Self::INFINITY;
        }
        Self::from_pair(
            add(mul(self.num, other.den), mul(other.num, self.den)),
            mul(self.den, other.den),
        )
    }

    pub fn to_f64(self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            self.num as f64 / self.den as f64
        }
    }

    /// `floor` of a finite slope.
    pub fn floor(self) -> i128 {
        assert!(!self.is_infinite(), "floor of inf");
        self.num.div_euclid(self.den)
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => mul(self.num, other.den).cmp(&mul(other.num, self.den)),
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::ParseSlope(s.to_string());
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Self::INFINITY);
        }
        match t.split_once('/') {
            Some((q, p)) => {
                let q: i128 = q.trim().parse().map_err(|_| bad())?;
                let p: i128 = p.trim().parse().map_err(|_| bad())?;
                Self::new(q, p).map_err(|_| bad())
            }
            None => t.parse::<i128>().map(Self::integer).map_err(|_| bad()),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Slope {
        x.parse().unwrap()
    }

    #[test]
    fn reduces_and_fixes_sign() {
        let a = Slope::new(10, -34).unwrap();
        assert_eq!((a.num(), a.den()), (-5, 17));
        assert_eq!(Slope::new(-3, 0).unwrap(), Slope::INFINITY);
        assert_eq!(Slope::new(0, 0), Err(Error::ZeroOverZero));
    }

    #[test]
    fn text_syntax() {
        assert_eq!(s("5/17").to_string(), "5/17");
        assert_eq!(s("inf").to_string(), "inf");
        assert_eq!(s("3").to_string(), "3/1");
        assert_eq!(s(" -2/4 ").to_string(), "-1/2");
        assert!("1/x".parse::<Slope>().is_err());
        assert!("0/0".parse::<Slope>().is_err());
    }

    #[test]
    fn projective_ops() {
        assert_eq!(Slope::ZERO.recip(), Slope::INFINITY);
        assert_eq!(Slope::INFINITY.recip(), Slope::ZERO);
        assert_eq!(s("2/7").add_int(1), s("9/7"));
        assert_eq!(s("1/2").add(s("1/3")), s("5/6"));
        assert_eq!(s("-5/3").floor(), -2);
    }

    #[test]
    fn ordering_puts_infinity_last() {
        let mut v = vec![s("inf"), s("1/2"), s("-3/4"), s("2/7")];
        v.sort();
        assert_eq!(v, vec![s("-3/4"), s("2/7"), s("1/2"), s("inf")]);
    }
}
