use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational_cf::Slope;
use crate::schubert::components;

/// One of the two meridian generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gen {
    A,
    B,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::A => Gen::B,
            Gen::B => Gen::A,
        }
    }

    fn name(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
        }
    }
}

/// A freely reduced word in `a`, `b`, stored as syllables `g^e` with
/// `e != 0` and no two adjacent syllables on the same generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FreeWord {
    syllables: Vec<(Gen, i64)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(g: Gen) -> Self {
        FreeWord { syllables: vec![(g, 1)] }
    }

    pub fn from_syllables(syllables: impl IntoIterator<Item = (Gen, i64)>) -> Self {
        let mut w = FreeWord::identity();
        for (g, e) in syllables {
            w.push(g, e);
        }
        w
    }

    /// Appends `g^e` and reduces.
    pub fn push(&mut self, g: Gen, e: i64) {
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((g, e)),
        }
    }

    pub fn syllables(&self) -> &[(Gen, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters `g^{±1}`.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.1.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// Letters `(g, ±1)` from left to right.
    pub fn letters(&self) -> impl Iterator<Item = (Gen, i64)> + '_ {
        self.syllables
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &(g, e) in &other.syllables {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn exponent_sum(&self, g: Gen) -> i64 {
        self.syllables.iter().filter(|s| s.0 == g).map(|s| s.1).sum()
    }

    /// Evaluates the word in a group given the images of `a`, `b` and
    /// their inverses.
    pub fn evaluate<T: Clone>(&self, identity: T, images: [&T; 4], mul: impl Fn(&T, &T) -> T) -> T {
        let mut acc = identity;
        for (g, e) in self.letters() {
            let x = match (g, e > 0) {
                (Gen::A, true) => images[0],
                (Gen::A, false) => images[1],
                (Gen::B, true) => images[2],
                (Gen::B, false) => images[3],
            };
            acc = mul(&acc, x);
        }
        acc
    }
}

fn superscript(e: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s: String = if e < 0 { "⁻".into() } else { String::new() };
    s.extend(e.unsigned_abs().to_string().bytes().map(|b| DIGITS[usize::from(b - b'0')]));
    s
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        for (i, &(g, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            write!(f, "{}", g.name())?;
            if e != 1 {
                f.write_str(&superscript(e))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Knot,
    Link,
}

/// `⟨a, b | relator⟩` on the upper meridian pair of `K(slope)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub slope: Slope,
    pub parity: Parity,
    /// The word `w` with `a·w = w·b^{±1}` (knots) or `a·w = w·a` (links).
    pub w: FreeWord,
    /// Empty for the free group of `K(∞)`.
    pub relator: FreeWord,
}

impl GroupPresentation {
    pub fn is_free(&self) -> bool {
        self.relator.is_identity()
    }

    /// The power of `t` that `b` maps to when `a ↦ t`: `-1` for knots with
    /// even numerator, `1` otherwise.
    pub fn b_exponent(&self) -> i64 {
        let (ea, eb) = (self.relator.exponent_sum(Gen::A), self.relator.exponent_sum(Gen::B));
        if eb != 0 && ea == eb {
            -1
        } else {
            1
        }
    }

    /// Rank of `H₁`: two minus the rank of the relator's exponent-sum
    /// vector.
    pub fn abelian_rank(&self) -> usize {
        let (ea, eb) = (self.relator.exponent_sum(Gen::A), self.relator.exponent_sum(Gen::B));
        if ea == 0 && eb == 0 {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_free() {
            write!(f, "⟨a,b | ⟩")
        } else {
            write!(f, "⟨a,b | {}⟩", self.relator)
        }
    }
}

/// The upper presentation of `G(K(q/p))`.
///
/// `w = b^{ε1} a^{ε2} b^{ε3} ⋯` has length `p - 1` with
/// `ε_i = (-1)^{⌊iq/p⌋}`; the relator is `a·w·b^{(-1)^q}·w⁻¹` for `p` odd
/// and `a·w·a⁻¹·w⁻¹` for `p` even. Both depend only on `q` modulo `2p`.
/// For even `q` the meridians `a` and `b` are conjugate to each other's
/// inverses.
pub fn upper_presentation(s: Slope) -> GroupPresentation {
    let parity = if components(s) == 1 { Parity::Knot } else { Parity::Link };
    if s.is_infinite() {
        return GroupPresentation { slope: s, parity, w: FreeWord::identity(), relator: FreeWord::identity() };
    }
    let (q, p) = (s.num(), s.den());
    let w = FreeWord::from_syllables((1..p).map(|i| {
        let g = if i % 2 == 1 { Gen::B } else { Gen::A };
        let e = if (i * q).div_euclid(p) % 2 == 0 { 1 } else { -1 };
        (g, e)
    }));
    let last = match parity {
        Parity::Knot if q % 2 == 0 => (Gen::B, 1),
        Parity::Knot => (Gen::B, -1),
        Parity::Link => (Gen::A, -1),
    };
    let relator = FreeWord::generator(Gen::A).mul(&w).mul(&FreeWord::from_syllables([last])).mul(&w.inverse());
    GroupPresentation { slope: s, parity, w, relator }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Gen::{A, B};

    fn s(x: &str) -> Slope {
        x.parse().unwrap()
    }

    #[test]
    fn free_reduction() {
        let w = FreeWord::from_syllables([(A, 2), (B, 1), (B, -1), (A, -1), (B, 3)]);
        assert_eq!(w.syllables(), &[(A, 1), (B, 3)]);
        assert!(w.mul(&w.inverse()).is_identity());
        assert_eq!(w.len(), 4);
        assert_eq!(w.to_string(), "a·b³");
        assert_eq!(FreeWord::from_syllables([(B, -12)]).to_string(), "b⁻¹²");
    }

    #[test]
    fn small_presentations() {
        let t = upper_presentation(s("1/3"));
        assert_eq!(t.w, FreeWord::from_syllables([(B, 1), (A, 1)]));
        assert_eq!(t.relator.to_string(), "a·b·a·b⁻¹·a⁻¹·b⁻¹");
        let h = upper_presentation(s("1/2"));
        assert_eq!(h.w, FreeWord::generator(B));
        assert_eq!(h.to_string(), "⟨a,b | a·b·a⁻¹·b⁻¹⟩");
        let f = upper_presentation(s("2/5"));
        assert_eq!(f.w, FreeWord::from_syllables([(B, 1), (A, 1), (B, -1), (A, -1)]));
        assert_eq!(f.relator.to_string(), "a·b·a·b⁻¹·a⁻¹·b·a·b·a⁻¹·b⁻¹");
        assert!(upper_presentation(Slope::INFINITY).is_free());
        assert_eq!(upper_presentation(s("12/5")), GroupPresentation { slope: s("12/5"), ..f.clone() });
        // q + p flips the b-exponents
        let g = upper_presentation(s("7/5"));
        assert_eq!(g.w, FreeWord::from_syllables([(B, -1), (A, 1), (B, 1), (A, -1)]));
        assert_eq!(g.relator.exponent_sum(B), -1);
    }

    #[test]
    fn abelianization_matches_components() {
        for p in 1..=200i128 {
            for q in 0..p {
                let Ok(sl) = Slope::new(q, p) else { continue };
                if sl.den() != p {
                    continue;
                }
                let pres = upper_presentation(sl);
                assert_eq!(pres.abelian_rank(), usize::from(components(sl)), "{sl}");
                if p >= 2 {
                    assert!(!pres.relator.is_identity());
                }
            }
        }
    }

    #[test]
    fn evaluation_in_integers() {
        // abelian image a, b -> 1 in Z
        let r = upper_presentation(s("3/7")).relator;
        let one = 1i64;
        let minus = -1i64;
        assert_eq!(r.evaluate(0, [&one, &minus, &one, &minus], |x, y| x + y), 0);
    }
}
