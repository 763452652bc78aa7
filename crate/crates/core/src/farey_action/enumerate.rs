use std::collections::BTreeMap;

use super::certificate::{OrbitCertificate, Target};
use super::frame::{check_generic, fold_inf, gamma_inf, Frame};
use crate::error::{Error, Result};
use crate::rational_cf::{cf_canonical, ContFrac, Slope};

/// Bounds for [`orbit_enumerate_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimits {
    /// Largest number of `a`-blocks in a pattern.
    pub max_blocks: usize,
    /// Bound on `|c_i|` for the inner factors.
    pub max_c: i64,
    /// Bound on the denominator of the generated slopes.
    pub max_den: i128,
    /// Bound on `|c|`, the outer `2c` shift.
    pub max_shift: i64,
}

/// Slopes `2c + [ε1 a, 2c1, ε2 a⁻¹, ...]` for the Euclidean expansion `a`
/// of `r` (moved into `(0, 1)`), with at most `max_blocks` blocks, all
/// `|c|, |c_i| <= max_c`, and denominator at most `max_den`.
pub fn orbit_enumerate(
    r: Slope,
    max_blocks: usize,
    max_c: i64,
    max_den: i128,
) -> Result<BTreeMap<Slope, OrbitCertificate>> {
    orbit_enumerate_with(r, &EnumLimits { max_blocks, max_c, max_den, max_shift: max_c })
}

pub fn orbit_enumerate_with(r: Slope, limits: &EnumLimits) -> Result<BTreeMap<Slope, OrbitCertificate>> {
    check_generic(r)?;
    orbit_enumerate_expansion(&cf_canonical(fold_inf(r).1)?, limits)
}

/// Enumeration over an explicit expansion `a` of the base.
///
/// Patterns are generated as reduced words built from the right. Adding a
/// `Γ_∞` factor keeps the denominator and adding a `Γ_r` factor never
/// lowers it, so a partial word whose value already exceeds `max_den` is
/// pruned. For a `Γ_r` factor the denominator is affine in its `c`, which
/// gives the admissible range directly. Every output value is the
/// evaluation of the pattern's continued fraction, checked against the
/// matrix value of the word.
pub fn orbit_enumerate_expansion(a: &ContFrac, limits: &EnumLimits) -> Result<BTreeMap<Slope, OrbitCertificate>> {
    let frame = Frame::new(a)?;
    let mut out = BTreeMap::new();
    let mut walk = Walk { frame: &frame, limits, out: &mut out };
    // words applied to ∞: innermost factor is in Γ_r
    walk.emit(Slope::INFINITY, &[], Target::Inf)?;
    walk.grow(Slope::INFINITY, &mut Vec::new(), Target::Inf)?;
    // words applied to r: innermost factor is in Γ_∞
    walk.emit(frame.base(), &[], Target::R)?;
    let mut inner = Vec::new();
    for (eta, c) in nontrivial(limits.max_c) {
        inner.push((eta, c));
        walk.extend_through_r(gamma_inf(eta, c).apply(frame.base()), &mut inner, Target::R)?;
        inner.pop();
    }
    Ok(out)
}

fn nontrivial(max_c: i64) -> impl Iterator<Item = (i8, i64)> {
    (-max_c..=max_c).flat_map(|c| [(1i8, c), (-1i8, c)]).filter(|&(eta, c)| !(eta == 1 && c == 0))
}

struct Walk<'a> {
    frame: &'a Frame,
    limits: &'a EnumLimits,
    out: &'a mut BTreeMap<Slope, OrbitCertificate>,
}

impl Walk<'_> {
    /// `inner` holds `(η, c)` of `W_n, W_{n-1}, ..., W_1` (rightmost first),
    /// with `W_1 ∈ Γ_r` unless empty; `v = W_1 ⋯ W_n (start)`.
    fn emit(&mut self, v: Slope, inner: &[(i8, i64)], target: Target) -> Result<()> {
        if inner.is_empty() && target == Target::Inf {
            let cert = OrbitCertificate::empty(self.frame.expansion())?;
            self.record(Slope::INFINITY, cert)?;
            return Ok(());
        }
        if inner.len() + 1 > self.limits.max_blocks {
            return Ok(());
        }
        let mut factors = Vec::with_capacity(inner.len() + 1);
        factors.push((1i8, 0i64));
        factors.extend(inner.iter().rev().copied());
        for c0 in -self.limits.max_shift..=self.limits.max_shift {
            for eta0 in [1i8, -1] {
                factors[0] = (eta0, c0);
                let cert = OrbitCertificate::from_factors(self.frame.expansion(), target, &factors)?;
                let by_matrix = gamma_inf(eta0, c0).apply(v);
                self.record(by_matrix, cert)?;
            }
        }
        Ok(())
    }

    fn record(&mut self, by_matrix: Slope, cert: OrbitCertificate) -> Result<()> {
        let value = cert.continued_fraction()?.eval();
        if value != by_matrix {
            return Err(Error::BadCertificate(format!(
                "pattern {} evaluates to {value} but its word gives {by_matrix}",
                cert.continued_fraction()?
            )));
        }
        self.out.entry(value).or_insert(cert);
        Ok(())
    }

    /// Prepends a `Γ_r` factor to a word whose leftmost factor is not in `Γ_r`.
    fn extend_through_r(&mut self, v: Slope, inner: &mut Vec<(i8, i64)>, target: Target) -> Result<()> {
        if inner.len() + 2 > self.limits.max_blocks {
            return Ok(());
        }
        let t = self.frame.to_local(v);
        if t.is_infinite() {
            return Ok(());
        }
        let [_, _, gamma, delta] = self.frame.matrix().entries();
        let (x, y) = (t.num(), t.den());
        for eta in [1i8, -1] {
            // denominator of M(ηt + 2c) is |γ(ηx + 2cy) + δy|
            let a = 2 * gamma * y;
            let b = gamma * i128::from(eta) * x + delta * y;
            let Some((lo, hi)) = window(a, b, self.limits.max_den) else { continue };
            let lo = lo.max(-i128::from(self.limits.max_c));
            let hi = hi.min(i128::from(self.limits.max_c));
            for c in lo..=hi {
                let c = c as i64;
                if eta == 1 && c == 0 {
                    continue;
                }
                let w = self.frame.gamma_r(eta, c).apply(v);
                inner.push((eta, c));
                self.emit(w, inner, target)?;
                self.grow(w, inner, target)?;
                inner.pop();
            }
        }
        Ok(())
    }

    /// Prepends an inner `Γ_∞` factor and then a `Γ_r` factor.
    fn grow(&mut self, v: Slope, inner: &mut Vec<(i8, i64)>, target: Target) -> Result<()> {
        if inner.is_empty() {
            return self.extend_through_r(v, inner, target);
        }
        for (eta, c) in nontrivial(self.limits.max_c) {
            inner.push((eta, c));
            self.extend_through_r(gamma_inf(eta, c).apply(v), inner, target)?;
            inner.pop();
        }
        Ok(())
    }
}

/// Integers `k` with `|a k + b| <= bound`, for `a != 0`.
fn window(a: i128, b: i128, bound: i128) -> Option<(i128, i128)> {
    let (a, b) = if a < 0 { (-a, -b) } else { (a, b) };
    let lo = (-bound - b).div_euclid(a) + i128::from((-bound - b).rem_euclid(a) != 0);
    let hi = (bound - b).div_euclid(a);
    (lo <= hi).then_some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Slope {
        x.parse().unwrap()
    }

    #[test]
    fn default_bounds() {
        let set = orbit_enumerate(s("1/3"), 3, 1, 60).unwrap();
        assert!(set.contains_key(&s("1/9")));
        assert!(set.contains_key(&s("7/24")));
        assert!(set.contains_key(&s("1/3")));
        let set = orbit_enumerate(s("2/5"), 2, 1, 60).unwrap();
        assert!(set.contains_key(&s("21/50")));
        assert!(set.contains_key(&s("2/5")));
    }

    #[test]
    fn bounds_respected() {
        let set = orbit_enumerate(s("2/7"), 4, 2, 80).unwrap();
        for (v, cert) in &set {
            assert!(v.is_infinite() || v.den() <= 80);
            assert!(cert.blocks <= 4);
            assert!(cert.cs.iter().all(|c| c.abs() <= 2));
            assert!(cert.c0.abs() <= 2);
            assert_eq!(cert.verify().unwrap(), *v);
        }
    }

    #[test]
    fn explicit_expansion() {
        let limits = EnumLimits { max_blocks: 3, max_c: 2, max_den: 200, max_shift: 0 };
        let even = orbit_enumerate_expansion(&ContFrac::new(vec![2, 2]), &limits).unwrap();
        let canon = orbit_enumerate_expansion(&ContFrac::new(vec![2, 1, 1]), &limits).unwrap();
        assert!(even.contains_key(&s("21/50")));
        assert!(canon.contains_key(&s("2/5")));
    }
}
