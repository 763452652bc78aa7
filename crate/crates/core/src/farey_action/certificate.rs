use serde::{Deserialize, Serialize};

use super::frame::{classify_gamma_inf, fold_inf, gamma_inf, Frame};
use super::moebius::MoebiusMap;
use crate::error::{Error, Result};
use crate::rational_cf::{cf_expand_pattern, ContFrac, Slope};

/// Which of the two orbit representatives a word is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "INF")]
    Inf,
    #[serde(rename = "R")]
    R,
}

/// A reduced word `W = W0 W1 ⋯ Wn` in `Γ̂_r = Γ_∞ * Γ_r` together with
/// the point (`∞` or `r`) it moves.
///
/// Even-indexed factors lie in `Γ_∞`, odd-indexed ones in `Γ_r`. Factor
/// `j` is stored as `(η_j, c_j)`:
///
/// * `j` even: `s ↦ η_j s - 2c_j`, i.e. `(A1A2)^{c_j}` or `(A1A2)^{c_j} A1`;
/// * `j` odd: `M ∘ (t ↦ η_j t + 2c_j) ∘ M⁻¹`, i.e. `(B1B2)^{c_j}` or `(B1B2)^{c_j} B1`,
///
/// where `M` is the frame of `expansion`. The empty word (the point `∞`
/// itself) has no factors and zero blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCertificate {
    pub target: Target,
    /// The slope `r` whose group the word lives in.
    pub base: Slope,
    /// The expansion `a` of `base` defining `B1`, `B2`.
    pub expansion: ContFrac,
    /// `η_0, ..., η_n`.
    pub eta: Vec<i8>,
    /// `c_1, ..., c_n`.
    pub cs: Vec<i64>,
    pub c0: i64,
    /// `ε_1, ..., ε_{n+1}` with `ε_j = η_0 (-η_1) ⋯ (-η_{j-1})`.
    pub eps: Vec<i8>,
    /// `n + 1`, the number of `a`-blocks in the continued fraction.
    pub blocks: usize,
}

fn derived_eps(eta: &[i8]) -> Vec<i8> {
    let mut out = Vec::with_capacity(eta.len());
    let mut e = 1i8;
    for (j, &h) in eta.iter().enumerate() {
        e = if j == 0 { h } else { -e * h };
        out.push(e);
    }
    out
}

impl OrbitCertificate {
    /// The certificate of the identity word acting on `∞`.
    pub fn empty(expansion: &ContFrac) -> Result<Self> {
        Self::from_factors(expansion, Target::Inf, &[])
    }

    /// Builds a certificate from the factor data `(η_j, c_j)`, `j = 0..=n`.
    pub fn from_factors(expansion: &ContFrac, target: Target, factors: &[(i8, i64)]) -> Result<Self> {
        let base = expansion.eval();
        let eta: Vec<i8> = factors.iter().map(|f| f.0).collect();
        let cert = OrbitCertificate {
            target,
            base,
            expansion: expansion.clone(),
            eps: derived_eps(&eta),
            cs: factors.iter().skip(1).map(|f| f.1).collect(),
            c0: factors.first().map_or(0, |f| f.1),
            blocks: factors.len(),
            eta,
        };
        cert.validate()?;
        Ok(cert)
    }

    /// The certificate whose continued fraction is
    /// `2c + [ε1 a, 2m1, ε2 a⁻¹, ..., εn a^{±1}]`.
    pub fn from_pattern(a: &ContFrac, c: i64, signs: &[i8], mids: &[i64]) -> Result<Self> {
        if signs.is_empty() || mids.len() + 1 != signs.len() {
            return Err(Error::PatternShape {
                blocks: signs.len(),
                expected: signs.len().saturating_sub(1),
                got: mids.len(),
            });
        }
        let target = if signs.len().is_multiple_of(2) { Target::Inf } else { Target::R };
        let mut factors = vec![(signs[0], -c)];
        for j in 1..signs.len() {
            factors.push((-signs[j] * signs[j - 1], i64::from(signs[j - 1]) * mids[j - 1]));
        }
        Self::from_factors(a, target, &factors)
    }

    /// Inverse of [`OrbitCertificate::from_pattern`]: `(c, signs, mids)`.
    pub fn pattern(&self) -> (i64, Vec<i8>, Vec<i64>) {
        let mids = self.cs.iter().zip(&self.eps).map(|(&c, &e)| i64::from(e) * c).collect();
        (-self.c0, self.eps.clone(), mids)
    }

    pub fn factors(&self) -> Vec<(i8, i64)> {
        self.eta
            .iter()
            .enumerate()
            .map(|(j, &e)| (e, if j == 0 { self.c0 } else { self.cs[j - 1] }))
            .collect()
    }

    /// Structural checks: lengths, sign values, the derived `ε`, the block
    /// parity of the target, and that every inner factor is nontrivial.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::BadCertificate(msg));
        if self.expansion.shift() != 0 || self.expansion.is_empty() {
            return bad(format!("expansion {} must be a nonempty unshifted continued fraction", self.expansion));
        }
        if self.expansion.eval() != self.base {
            return bad(format!("expansion {} does not evaluate to base {}", self.expansion, self.base));
        }
        if self.base.is_infinite() || self.base.is_integer() {
            return bad(format!("base {} must be a non-integral rational", self.base));
        }
        if self.blocks != self.eta.len() || self.eps.len() != self.eta.len() {
            return bad("blocks, eta and eps lengths disagree".into());
        }
        if self.cs.len() + 1 != self.eta.len().max(1) {
            return bad("cs must have one entry per factor after the first".into());
        }
        if self.eta.iter().any(|&e| e != 1 && e != -1) {
            return bad("eta entries must be +1 or -1".into());
        }
        if self.eps != derived_eps(&self.eta) {
            return bad("eps does not follow from eta".into());
        }
        if self.blocks == 0 {
            if self.target != Target::Inf || self.c0 != 0 {
                return bad("the empty word only certifies inf".into());
            }
            return Ok(());
        }
        let wants = if self.blocks.is_multiple_of(2) { Target::Inf } else { Target::R };
        if self.target != wants {
            return bad(format!("{} blocks certify {:?}, not {:?}", self.blocks, wants, self.target));
        }
        if self.eta[1..].iter().zip(&self.cs).any(|(&e, &c)| e == 1 && c == 0) {
            return bad("inner factors of a reduced word are nontrivial".into());
        }
        Ok(())
    }

    /// The word `W` as a matrix.
    pub fn word(&self) -> Result<MoebiusMap> {
        if self.blocks == 0 {
            return Ok(MoebiusMap::IDENTITY);
        }
        let frame = Frame::new(&self.expansion)?;
        let mut w = MoebiusMap::IDENTITY;
        for (j, (eta, c)) in self.factors().into_iter().enumerate() {
            let g = if j % 2 == 0 { gamma_inf(eta, c) } else { frame.gamma_r(eta, c) };
            w = w.compose(&g);
        }
        Ok(w)
    }

    /// `W(∞)` or `W(r)`, computed by matrix application.
    pub fn slope(&self) -> Result<Slope> {
        let start = match self.target {
            Target::Inf => Slope::INFINITY,
            Target::R => self.base,
        };
        Ok(self.word()?.apply(start))
    }

    /// The continued fraction
    /// `-2c0 + [ε1 a, 2ε1c1, ε2 a⁻¹, 2ε2c2, ..., ε_{n+1} a^{(-1)^n}]`.
    pub fn continued_fraction(&self) -> Result<ContFrac> {
        if self.blocks == 0 {
            return Ok(ContFrac::new(vec![0]));
        }
        let (c, signs, mids) = self.pattern();
        cf_expand_pattern(&self.expansion, c, &signs, &mids)
    }

    /// The same word written over another expansion `b` of the base.
    ///
    /// When `b` evaluates to `base + 2k` every factor is conjugated by the
    /// translation `s ↦ s + 2k`, so the new certificate names the slope
    /// `rtilde + 2k`.
    pub fn reexpress(&self, b: &ContFrac) -> Result<OrbitCertificate> {
        let value = b.eval();
        let diff = if value.is_infinite() { None } else { Some(value.add(self.base.neg())) };
        let k = match diff {
            Some(d) if d.is_integer() && d.num() % 2 == 0 => d.num(),
            _ => {
                return Err(Error::BadExpansion(format!(
                    "{b} does not differ from {} by an even integer",
                    self.base
                )))
            }
        };
        let frame = Frame::new(&self.expansion)?;
        let new_frame = Frame::new(b)?;
        let shift = MoebiusMap::translation(k);
        let factors = self.factors().into_iter().enumerate().map(|(j, (eta, c))| {
            let (side, g) = if j % 2 == 0 { (Side::Inf, gamma_inf(eta, c)) } else { (Side::R, frame.gamma_r(eta, c)) };
            (side, g.conjugate_by(&shift))
        });
        if self.blocks == 0 {
            return OrbitCertificate::empty(b);
        }
        normal_form(&new_frame, factors, self.target)
    }

    /// Checks that the continued fraction and the matrix word agree on the
    /// certified slope, and returns it.
    pub fn verify(&self) -> Result<Slope> {
        self.validate()?;
        let by_word = self.slope()?;
        let by_cf = self.continued_fraction()?.eval();
        if by_word != by_cf {
            return Err(Error::BadCertificate(format!(
                "word gives {by_word} but the continued fraction gives {by_cf}"
            )));
        }
        Ok(by_word)
    }
}

/// `W ↦` its continued fraction, after checking that `cert` belongs to
/// the group of `r` (its base must be `Γ_∞`-equivalent to `r`).
pub fn orbit_word_to_cf(cert: &OrbitCertificate, r: Slope) -> Result<ContFrac> {
    cert.validate()?;
    if r.is_infinite() || fold_inf(r).1 != fold_inf(cert.base).1 {
        return Err(Error::BadCertificate(format!("certificate over {} does not apply to {r}", cert.base)));
    }
    cert.continued_fraction()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    Inf,
    R,
}

/// Reduces a product of group elements, given left to right with the
/// factor each one lies in, to the normal form of a certificate.
pub(crate) fn normal_form(
    frame: &Frame,
    factors: impl IntoIterator<Item = (Side, MoebiusMap)>,
    target: Target,
) -> Result<OrbitCertificate> {
    let mut stack: Vec<(Side, MoebiusMap)> = Vec::new();
    for (side, g) in factors {
        if g.is_identity() {
            continue;
        }
        match stack.last_mut() {
            Some((top, h)) if *top == side => {
                *h = h.compose(&g);
                if h.is_identity() {
                    stack.pop();
                }
            }
            _ => stack.push((side, g)),
        }
    }
    let stabilizer = match target {
        Target::Inf => Side::Inf,
        Target::R => Side::R,
    };
    if stack.last().is_some_and(|(side, _)| *side == stabilizer) {
        stack.pop();
    }
    if stack.first().is_some_and(|(side, _)| *side == Side::R) {
        stack.insert(0, (Side::Inf, MoebiusMap::IDENTITY));
    }
    if target == Target::R && stack.is_empty() {
        stack.push((Side::Inf, MoebiusMap::IDENTITY));
    }
    let mut data = Vec::with_capacity(stack.len());
    for (side, g) in &stack {
        let classified = match side {
            Side::Inf => classify_gamma_inf(g),
            Side::R => frame.classify_gamma_r(g),
        };
        data.push(classified.ok_or_else(|| Error::BadCertificate(format!("{g} is not in the expected factor")))?);
    }
    OrbitCertificate::from_factors(frame.expansion(), target, &data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Slope {
        x.parse().unwrap()
    }

    fn cf(v: &[i64]) -> ContFrac {
        ContFrac::new(v.to_vec())
    }

    #[test]
    fn figure_eight_to_twenty_one_fiftieths() {
        let cert = OrbitCertificate::from_factors(&cf(&[2, 2]), Target::Inf, &[(1, 0), (1, 1)]).unwrap();
        assert_eq!(cert.eps, vec![1, -1]);
        assert_eq!(cert.continued_fraction().unwrap(), cf(&[2, 2, 2, -2, -2]));
        assert_eq!(cert.verify().unwrap(), s("21/50"));
        let frame = Frame::new(&cf(&[2, 2])).unwrap();
        assert_eq!(cert.word().unwrap(), frame.b1().compose(&frame.b2()));
    }

    #[test]
    fn nine_one_over_trefoil() {
        let cert = OrbitCertificate::from_pattern(&cf(&[3]), 0, &[1, 1, 1], &[0, 0]).unwrap();
        assert_eq!(cert.target, Target::R);
        assert_eq!(cert.eta, vec![1, -1, -1]);
        assert_eq!(cert.cs, vec![0, 0]);
        assert_eq!(cert.continued_fraction().unwrap(), cf(&[3, 0, 3, 0, 3]));
        assert_eq!(cert.verify().unwrap(), s("1/9"));
        assert_eq!(cert.pattern(), (0, vec![1, 1, 1], vec![0, 0]));
    }

    #[test]
    fn empty_word() {
        let cert = OrbitCertificate::empty(&cf(&[3, 2, 2])).unwrap();
        assert_eq!(cert.blocks, 0);
        assert_eq!(cert.verify().unwrap(), Slope::INFINITY);
        assert_eq!(orbit_word_to_cf(&cert, s("5/17")).unwrap().eval(), Slope::INFINITY);
    }

    #[test]
    fn malformed_certificates_rejected() {
        let mut cert = OrbitCertificate::from_pattern(&cf(&[3]), 0, &[1, -1], &[2]).unwrap();
        assert!(cert.verify().is_ok());
        cert.eps[1] = 1;
        assert!(matches!(cert.validate(), Err(Error::BadCertificate(_))));
        let trivial = OrbitCertificate::from_factors(&cf(&[3]), Target::R, &[(1, 0), (1, 0), (-1, 0)]);
        assert!(trivial.is_err());
        let wrong_target = OrbitCertificate::from_factors(&cf(&[3]), Target::Inf, &[(1, 0)]);
        assert!(wrong_target.is_err());
        let ok = OrbitCertificate::from_pattern(&cf(&[3]), 0, &[1, 1], &[1]).unwrap();
        assert!(orbit_word_to_cf(&ok, s("2/5")).is_err());
        assert!(orbit_word_to_cf(&ok, s("7/3")).is_ok());
    }

    #[test]
    fn json_shape() {
        let cert = OrbitCertificate::from_pattern(&cf(&[2, 2]), 0, &[1, -1], &[1]).unwrap();
        let v = serde_json::to_value(&cert).unwrap();
        assert_eq!(v["target"], "INF");
        assert_eq!(v["eps"], serde_json::json!([1, -1]));
        assert_eq!(v["cs"], serde_json::json!([1]));
        assert_eq!(v["blocks"], 2);
        let back: OrbitCertificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, cert);
    }
}
