//! Schubert's classification of 2-bridge links and the representative
//! search behind the orbit criterion.

use serde::Serialize;

use crate::error::Result;
use crate::farey_action::{orbit_membership, Membership, MembershipLimits, OrbitCertificate};
use crate::rational_cf::Slope;

/// Number of components of `K(s)`: one for odd denominators, two for even
/// denominators and for `∞`.
pub fn components(s: Slope) -> u8 {
    if s.den() % 2 == 1 {
        1
    } else {
        2
    }
}

/// `q⁻¹ mod p` for `gcd(q, p) = 1`, in `[0, p)`.
pub fn mod_inverse(q: i128, p: i128) -> Option<i128> {
    let (mut r0, mut r1) = (q.rem_euclid(p), p);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
    }
    (r0 == 1 || p == 1).then(|| s0.rem_euclid(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Preserving,
    Reversing,
    NotApplicable,
}

/// Which congruence made two slopes equivalent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Clause {
    #[serde(rename = "q = q' mod p")]
    Same,
    #[serde(rename = "q = -q' mod p")]
    Negated,
    #[serde(rename = "qq' = 1 mod p")]
    Inverse,
    #[serde(rename = "qq' = -1 mod p")]
    NegatedInverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub orientation: Orientation,
    /// The homeomorphism swaps the upper and lower tangles.
    pub tangle_exchange: bool,
    pub clause: Option<Clause>,
}

impl EquivalenceVerdict {
    const NO: EquivalenceVerdict = EquivalenceVerdict {
        equivalent: false,
        orientation: Orientation::NotApplicable,
        tangle_exchange: false,
        clause: None,
    };
}

/// `K(q/p) ≅ K(q'/p')` iff `p = p'` and `q ≡ ±q'` or `qq' ≡ ±1 (mod p)`.
///
/// When several congruences hold the first in the order
/// `q ≡ q'`, `q ≡ -q'`, `qq' ≡ 1`, `qq' ≡ -1` is reported. The last two
/// exchange the tangles; the first and third preserve orientation.
pub fn equivalent(s1: Slope, s2: Slope) -> EquivalenceVerdict {
    if s1.is_infinite() || s2.is_infinite() {
        return if s1 == s2 {
            EquivalenceVerdict {
                equivalent: true,
                orientation: Orientation::Preserving,
                tangle_exchange: false,
                clause: Some(Clause::Same),
            }
        } else {
            EquivalenceVerdict::NO
        };
    }
    let p = s1.den();
    if p != s2.den() {
        return EquivalenceVerdict::NO;
    }
    let (q, q2) = (s1.num().rem_euclid(p), s2.num().rem_euclid(p));
    let prod = (q * q2).rem_euclid(p);
    let one = 1 % p;
    let minus_one = (p - 1) % p;
    let (clause, orientation, exchange) = if q == q2 {
        (Clause::Same, Orientation::Preserving, false)
    } else if q == (p - q2) % p {
        (Clause::Negated, Orientation::Reversing, false)
    } else if prod == one {
        (Clause::Inverse, Orientation::Preserving, true)
    } else if prod == minus_one {
        (Clause::NegatedInverse, Orientation::Reversing, true)
    } else {
        return EquivalenceVerdict::NO;
    };
    EquivalenceVerdict { equivalent: true, orientation, tangle_exchange: exchange, clause: Some(clause) }
}

/// The representative `q/p` of the class of `s` with the least numerator
/// in `[0, p)`, taken over `±q` and `±q⁻¹`.
pub fn normalize(s: Slope) -> Slope {
    if s.is_infinite() {
        return s;
    }
    let p = s.den();
    let q = s.num().rem_euclid(p);
    let inv = mod_inverse(q, p).expect("reduced slope");
    let best = [q, (p - q) % p, inv, (p - inv) % p].into_iter().min().expect("nonempty");
    Slope::new(best, p).expect("p > 0")
}

/// Numerators `{q, q + p, q⁻¹, q⁻¹ + p}`: one slope from each
/// `Γ_∞`-class of slopes naming the same link, plain ones first.
pub fn representatives(s: Slope) -> Vec<(Slope, bool)> {
    if s.is_infinite() {
        return vec![(s, false)];
    }
    let p = s.den();
    let q = s.num().rem_euclid(p);
    let inv = mod_inverse(q, p).expect("reduced slope");
    let mut out: Vec<(Slope, bool)> = Vec::new();
    for (num, inverted) in [(q, false), (q + p, false), (inv, true), (inv + p, true)] {
        let v = Slope::new(num, p).expect("p > 0");
        if !out.iter().any(|(w, _)| *w == v) {
            out.push((v, inverted));
        }
    }
    out
}

/// Whether a meridian pair is the upper pair of the given slope or its
/// lower pair (the upper pair of the inverse representative).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeridianPair {
    Upper,
    Lower,
}

/// Outcome of [`epi_candidate`].
///
/// `orbit_candidate` says that some representatives satisfy the orbit
/// criterion, which produces an epimorphism sending meridian pair to
/// meridian pair. A negative answer does not rule out other epimorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateReport {
    pub rtilde: Slope,
    pub r: Slope,
    pub orbit_candidate: bool,
    /// Representatives that succeeded, if any.
    pub rtilde_rep: Option<Slope>,
    pub r_rep: Option<Slope>,
    /// Pair of `K(rtilde)` that is sent to the pair `target_pair` of `K(r)`.
    pub source_pair: Option<MeridianPair>,
    pub target_pair: Option<MeridianPair>,
    pub membership: Option<Membership>,
    pub pairings_tried: usize,
}

impl CandidateReport {
    pub fn certificate(&self) -> Option<&OrbitCertificate> {
        self.membership.as_ref().and_then(Membership::certificate)
    }
}

/// Tries every pairing of representatives of `K(rtilde)` and `K(r)`
/// against the orbit criterion, identity pairing first.
pub fn epi_candidate(rtilde: Slope, r: Slope) -> Result<CandidateReport> {
    epi_candidate_with(rtilde, r, &MembershipLimits::default())
}

pub fn epi_candidate_with(rtilde: Slope, r: Slope, limits: &MembershipLimits) -> Result<CandidateReport> {
    let mut tried = 0;
    for (r_rep, r_inv) in representatives(r) {
        for (rt_rep, rt_inv) in representatives(rtilde) {
            tried += 1;
            let m = orbit_membership(rt_rep, r_rep, limits)?;
            if m.is_member() {
                let pair = |inv: bool| if inv { MeridianPair::Lower } else { MeridianPair::Upper };
                return Ok(CandidateReport {
                    rtilde,
                    r,
                    orbit_candidate: true,
                    rtilde_rep: Some(rt_rep),
                    r_rep: Some(r_rep),
                    source_pair: Some(pair(rt_inv)),
                    target_pair: Some(pair(r_inv)),
                    membership: Some(m),
                    pairings_tried: tried,
                });
            }
        }
    }
    Ok(CandidateReport {
        rtilde,
        r,
        orbit_candidate: false,
        rtilde_rep: None,
        r_rep: None,
        source_pair: None,
        target_pair: None,
        membership: None,
        pairings_tried: tried,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Slope {
        x.parse().unwrap()
    }

    #[test]
    fn component_count() {
        assert_eq!(components(s("5/17")), 1);
        assert_eq!(components(s("21/50")), 2);
        assert_eq!(components(Slope::INFINITY), 2);
    }

    #[test]
    fn equivalence_examples() {
        let v = equivalent(s("5/17"), s("7/17"));
        assert!(v.equivalent && v.tangle_exchange);
        assert_eq!(v.orientation, Orientation::Preserving);
        let v = equivalent(s("1/3"), s("2/3"));
        assert!(v.equivalent && !v.tangle_exchange);
        assert_eq!(v.orientation, Orientation::Reversing);
        assert_eq!(equivalent(s("1/5"), s("2/5")), EquivalenceVerdict::NO);
        assert!(!equivalent(s("1/5"), s("1/7")).equivalent);
        let v = equivalent(s("2/5"), s("2/5"));
        assert_eq!(v.clause, Some(Clause::Same));
    }

    #[test]
    fn normal_forms() {
        assert_eq!(normalize(s("7/17")), s("5/17"));
        assert_eq!(normalize(s("12/17")), s("5/17"));
        assert_eq!(normalize(s("1/3")), s("1/3"));
        assert_eq!(normalize(s("-8/3")), s("1/3"));
        assert_eq!(normalize(s("4")), s("0"));
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(5, 17), Some(7));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(0, 1), Some(0));
    }

    #[test]
    fn candidates() {
        let rep = epi_candidate(s("5/27"), s("1/3")).unwrap();
        assert!(rep.orbit_candidate);
        assert!(epi_candidate(s("5/17"), s("5/17")).unwrap().orbit_candidate);
        let rep = epi_candidate(s("2/5"), s("1/3")).unwrap();
        assert!(!rep.orbit_candidate);
        assert_eq!(rep.pairings_tried, 8);
    }
}
