use serde::Serialize;

use super::bfs::BfsOrbit;
use super::certificate::{normal_form, OrbitCertificate, Side, Target};
use super::frame::{fold_inf, Frame};
use super::moebius::MoebiusMap;
use crate::error::{Error, Result};
use crate::rational_cf::Slope;

/// Caps for [`orbit_membership`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MembershipLimits {
    /// Folding steps before giving up on the reduction.
    pub max_steps: usize,
    /// Largest denominator the breadth-first fallback will search up to.
    pub bfs_max_den: i128,
    /// Depth cap of the breadth-first fallback.
    pub bfs_max_len: usize,
}

impl Default for MembershipLimits {
    fn default() -> Self {
        MembershipLimits { max_steps: 100_000, bfs_max_den: 2_000, bfs_max_len: 100_000 }
    }
}

/// The degenerate bases for which no free-product word exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SpecialCase {
    /// `r = ∞`: the group is `Γ_∞` alone and fixes `∞`.
    InfiniteBase,
    /// `r ∈ Z`: every slope is accepted, since all integers name the
    /// trivial knot. The group of a single integer `n` is the reflection
    /// group of an ideal triangle, whose orbit of `{∞, n}` is the two
    /// parity classes of `1/0` and `n/1`; `via` is an integer whose orbit
    /// literally contains the slope (`n` itself, or `n + 1` for the
    /// remaining class).
    IntegerBase { via: Slope },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Certificate { certificate: OrbitCertificate },
    Special { case: SpecialCase },
}

/// Verdict of [`orbit_membership`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Membership {
    #[serde(rename = "ORBIT_INF")]
    OrbitInf { witness: Witness },
    #[serde(rename = "ORBIT_R")]
    OrbitR { witness: Witness },
    /// The reduction stopped at a point of the fundamental domain other
    /// than `∞` and `r`.
    #[serde(rename = "NOT_IN_ORBIT")]
    NotInOrbit { reduced_to: Slope },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        !matches!(self, Membership::NotInOrbit { .. })
    }

    pub fn certificate(&self) -> Option<&OrbitCertificate> {
        match self {
            Membership::OrbitInf { witness: Witness::Certificate { certificate } }
            | Membership::OrbitR { witness: Witness::Certificate { certificate } } => Some(certificate),
            _ => None,
        }
    }

    fn from_certificate(certificate: OrbitCertificate) -> Self {
        let witness = Witness::Certificate { certificate };
        match &witness {
            Witness::Certificate { certificate } if certificate.target == Target::R => Membership::OrbitR { witness },
            _ => Membership::OrbitInf { witness },
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Membership::OrbitInf { .. } => "ORBIT_INF",
            Membership::OrbitR { .. } => "ORBIT_R",
            Membership::NotInOrbit { .. } => "NOT_IN_ORBIT",
        }
    }
}

/// Decides whether `rtilde ∈ Γ̂_r · {∞, r}`.
///
/// For non-integral `r` the base is first moved into `(0, 1)` by `Γ_∞`
/// (this does not change the group), and the certificate refers to that
/// representative and its Euclidean expansion. The reduction alternates
/// two folds until it reaches `∞`, `r`, or a point of the fundamental
/// domain:
///
/// * outside `[0, 1]`, fold into `[0, 1]` with `Γ_∞`;
/// * strictly between `r_{m-1}` and `r'`, fold with `Γ_r` into the strip
///   `M([-1, 0])`.
///
/// Neither fold raises the denominator. If the step cap is hit anyway, a
/// breadth-first search bounded by the denominator of `rtilde` decides
/// instead; if that is also out of reach the answer is
/// [`Error::Undecided`].
pub fn orbit_membership(rtilde: Slope, r: Slope, limits: &MembershipLimits) -> Result<Membership> {
    if r.is_infinite() {
        return Ok(if rtilde.is_infinite() {
            Membership::OrbitInf { witness: Witness::Special { case: SpecialCase::InfiniteBase } }
        } else {
            Membership::NotInOrbit { reduced_to: fold_inf(rtilde).1 }
        });
    }
    if r.is_integer() {
        let parity = |s: Slope| (s.num().rem_euclid(2), s.den().rem_euclid(2));
        let via = if parity(rtilde) == (1, 0) || parity(rtilde) == parity(r) { r } else { r.add_int(1) };
        let witness = Witness::Special { case: SpecialCase::IntegerBase { via } };
        return Ok(if parity(rtilde) == (1, 0) {
            Membership::OrbitInf { witness }
        } else {
            Membership::OrbitR { witness }
        });
    }
    let base = fold_inf(r).1;
    let frame = Frame::canonical(base)?;
    let (lo, hi) = ordered(frame.r_prev(), frame.r_prime());

    let mut s = rtilde;
    let mut folds: Vec<(Side, MoebiusMap)> = Vec::new();
    let mut steps = 0usize;
    let target = loop {
        if s.is_infinite() {
            break Target::Inf;
        }
        if s == base {
            break Target::R;
        }
        if steps >= limits.max_steps {
            return fallback(rtilde, base, &frame, steps, limits);
        }
        steps += 1;
        if s < Slope::ZERO || s > Slope::integer(1) {
            let (g, t) = fold_inf(s);
            folds.push((Side::Inf, g));
            s = t;
        } else if lo < s && s < hi {
            let (g, t) = fold_r(&frame, s);
            folds.push((Side::R, g));
            s = t;
        } else {
            return Ok(Membership::NotInOrbit { reduced_to: s });
        }
    };
    // s_final = g_k ⋯ g_1 (rtilde), so rtilde = g_1⁻¹ ⋯ g_k⁻¹ (s_final)
    let word = folds.into_iter().map(|(side, g)| (side, g.inverse()));
    let cert = normal_form(&frame, word, target)?;
    if cert.verify()? != rtilde {
        return Err(Error::BadCertificate(format!("reduction of {rtilde} produced an inconsistent word")));
    }
    Ok(Membership::from_certificate(cert))
}

/// [`orbit_membership`] with default limits.
pub fn is_in_orbit(rtilde: Slope, r: Slope) -> Result<bool> {
    Ok(orbit_membership(rtilde, r, &MembershipLimits::default())?.is_member())
}

fn ordered(a: Slope, b: Slope) -> (Slope, Slope) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Moves `s` into `M([-1, 0])` with an element of `Γ_r`.
fn fold_r(frame: &Frame, s: Slope) -> (MoebiusMap, Slope) {
    let t = frame.to_local(s);
    // fold t + 1 into [0, 1], then shift back
    let (g, u) = fold_inf(t.add_int(1));
    let local = MoebiusMap::translation(-1).compose(&g).compose(&MoebiusMap::translation(1));
    (local.conjugate_by(&frame.matrix()), frame.from_local(u.add_int(-1)))
}

fn fallback(rtilde: Slope, base: Slope, frame: &Frame, steps: usize, limits: &MembershipLimits) -> Result<Membership> {
    let undecided = |detail: String| Error::Undecided { rtilde, r: base, steps, detail };
    let den = if rtilde.is_infinite() { 1 } else { rtilde.den() };
    if den > limits.bfs_max_den {
        return Err(undecided(format!(
            "step cap reached and denominator {den} exceeds the search bound {}",
            limits.bfs_max_den
        )));
    }
    let orbit = BfsOrbit::run(base, limits.bfs_max_len, den);
    match orbit.certificate(rtilde, frame)? {
        Some(cert) => Ok(Membership::from_certificate(cert)),
        None if orbit.is_complete() => Ok(Membership::NotInOrbit { reduced_to: fold_inf(rtilde).1 }),
        None => Err(undecided("step cap reached and the bounded search was cut short".into())),
    }
}
