use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational_cf::Slope;

/// An element of PGL(2, Z): the map `s ↦ (a s + b)/(c s + d)` with
/// `ad - bc = ±1`.
///
/// Stored with the first nonzero entry positive, so two matrices that
/// differ by a global sign compare equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MoebiusMap {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

fn mul(x: i128, y: i128) -> i128 {
    x.checked_mul(y).expect("matrix entry overflow")
}

fn add(x: i128, y: i128) -> i128 {
    x.checked_add(y).expect("matrix entry overflow")
}

impl MoebiusMap {
    pub const IDENTITY: MoebiusMap = MoebiusMap { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Result<Self> {
        let det = a * d - b * c;
        if det != 1 && det != -1 {
            return Err(Error::Unsupported(format!("matrix [{a},{b},{c},{d}] has determinant {det}")));
        }
        Ok(Self::normalized(a, b, c, d))
    }

    fn normalized(a: i128, b: i128, c: i128, d: i128) -> Self {
        let first = [a, b, c, d].into_iter().find(|&x| x != 0).unwrap_or(1);
        if first < 0 {
            MoebiusMap { a: -a, b: -b, c: -c, d: -d }
        } else {
            MoebiusMap { a, b, c, d }
        }
    }

    /// `s ↦ s/(k s + 1)`, i.e. `s ↦ 1/(k + 1/s)`.
    pub fn lower(k: i64) -> Self {
        MoebiusMap { a: 1, b: 0, c: i128::from(k), d: 1 }
    }

    /// `s ↦ s + k`.
    pub fn upper(k: i64) -> Self {
        Self::normalized(1, i128::from(k), 0, 1)
    }

    pub fn translation(k: i128) -> Self {
        Self::normalized(1, k, 0, 1)
    }

    /// `s ↦ 1/s`.
    pub fn inversion() -> Self {
        MoebiusMap { a: 0, b: 1, c: 1, d: 0 }
    }

    /// `s ↦ -s`.
    pub fn negation() -> Self {
        Self::normalized(-1, 0, 0, 1)
    }

    /// `s ↦ k - s`, the reflection in the vertical line through `k/2`.
    pub fn flip(k: i128) -> Self {
        Self::normalized(-1, k, 0, 1)
    }

    /// The reflection of the Farey tessellation in the edge joining two
    /// Farey neighbours.
    pub fn edge_reflection(u: Slope, v: Slope) -> Result<Self> {
        let (p1, q1) = (u.num(), u.den());
        let (p2, q2) = (v.num(), v.den());
        let det = p1 * q2 - p2 * q1;
        if det.abs() != 1 {
            return Err(Error::Unsupported(format!("{u} and {v} are not Farey neighbours")));
        }
        let n = Self::normalized(p1, p2, q1, q2);
        let flip = Self::normalized(1, 0, 0, -1);
        Ok(n.compose(&flip).compose(&n.inverse()))
    }

    pub fn entries(&self) -> [i128; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> i128 {
        self.a * self.d - self.b * self.c
    }

    pub fn preserves_orientation(&self) -> bool {
        self.det() == 1
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        Self::normalized(
            add(mul(self.a, other.a), mul(self.b, other.c)),
            add(mul(self.a, other.b), mul(self.b, other.d)),
            add(mul(self.c, other.a), mul(self.d, other.c)),
            add(mul(self.c, other.b), mul(self.d, other.d)),
        )
    }

    /// Inverse up to sign: the adjugate matrix.
    pub fn inverse(&self) -> MoebiusMap {
        Self::normalized(self.d, -self.b, -self.c, self.a)
    }

    pub fn pow(&self, k: i64) -> MoebiusMap {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut out = Self::IDENTITY;
        for _ in 0..k.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    pub fn conjugate_by(&self, m: &MoebiusMap) -> MoebiusMap {
        m.compose(self).compose(&m.inverse())
    }

    pub fn apply(&self, s: Slope) -> Slope {
        let (x, y) = (s.num(), s.den());
        let num = add(mul(self.a, x), mul(self.b, y));
        let den = add(mul(self.c, x), mul(self.d, y));
        Slope::new(num, den).expect("unimodular image of a primitive vector is nonzero")
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{}]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for MoebiusMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Slope {
        x.parse().unwrap()
    }

    #[test]
    fn sign_normalization() {
        let m = MoebiusMap::new(-1, 0, 0, -1).unwrap();
        assert!(m.is_identity());
        assert!(MoebiusMap::new(2, 0, 0, 1).is_err());
        assert_eq!(MoebiusMap::negation().entries(), [1, 0, 0, -1]);
    }

    #[test]
    fn action() {
        assert_eq!(MoebiusMap::negation().apply(s("5/17")), s("-5/17"));
        assert_eq!(MoebiusMap::flip(2).apply(Slope::ZERO), s("2"));
        assert_eq!(MoebiusMap::inversion().apply(Slope::ZERO), Slope::INFINITY);
        assert_eq!(MoebiusMap::lower(3).apply(Slope::INFINITY), s("1/3"));
        assert_eq!(MoebiusMap::IDENTITY.apply(s("-4/9")), s("-4/9"));
    }

    #[test]
    fn group_laws() {
        let m = MoebiusMap::new(2, 3, 1, 2).unwrap();
        assert!(m.compose(&m.inverse()).is_identity());
        assert_eq!(m.pow(3), m.compose(&m).compose(&m));
        assert!(m.pow(-2).compose(&m.pow(2)).is_identity());
        let r = MoebiusMap::edge_reflection(s("1/3"), s("2/7")).unwrap();
        assert!(r.compose(&r).is_identity());
        assert_eq!(r.apply(s("1/3")), s("1/3"));
        assert_eq!(r.apply(s("2/7")), s("2/7"));
        assert!(!r.preserves_orientation());
    }
}
