//! Alexander polynomials and finite-quotient checks for claimed
//! epimorphisms.

mod finite;
mod poly;

pub use finite::{
    finite_quotient_implication, finite_quotient_implication_capped, finite_quotient_with, FiniteField,
    FiniteQuotientResult, Sl2, MAX_PAIRS,
};
pub use poly::{divides, LaurentPoly};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{upper_presentation, Gen, GroupPresentation};
use crate::rational_cf::{ContFrac, Slope};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlexanderPolynomial {
    pub polynomial: LaurentPoly,
    /// The presentation had no relator; the polynomial is reported as 1.
    pub free_group: bool,
}

/// `∂R/∂a` under the abelianization `a ↦ t`, `b ↦ t^{±1}`, normalized
/// to lowest exponent 0 and a positive leading coefficient.
///
/// A letter `a` contributes `t^k` and a letter `a⁻¹` contributes
/// `-t^{k-1}`, where `t^k` is the image of the prefix before it. For links
/// both meridians go to `t`.
pub fn fox_alexander(pres: &GroupPresentation) -> AlexanderPolynomial {
    if pres.is_free() {
        return AlexanderPolynomial { polynomial: LaurentPoly::one(), free_group: true };
    }
    let b_exp = pres.b_exponent();
    let mut k = 0i64;
    let mut acc = LaurentPoly::zero();
    for (g, e) in pres.relator.letters() {
        if g == Gen::A {
            let term = if e > 0 { LaurentPoly::monomial(1, k) } else { LaurentPoly::monomial(-1, k - 1) };
            acc = &acc + &term;
            k += e;
        } else {
            k += b_exp * e;
        }
    }
    AlexanderPolynomial { polynomial: acc.normalized(), free_group: false }
}

/// The Alexander polynomial of `K(s)` from its upper presentation.
pub fn alexander(s: Slope) -> LaurentPoly {
    fox_alexander(&upper_presentation(s)).polynomial
}

/// The Alexander polynomial of the knot `K(s)` read off an even expansion
/// `s = 2c + [2b_1, ..., 2b_n]` (all `b_i` nonzero, `n` even).
///
/// The Conway polynomial is the continuant `P_n` with `P_{-1} = 0`,
/// `P_0 = 1`, `P_k = (-1)^{k+1} b_k z P_{k-1} + P_{k-2}`, and
/// `Δ(t) = ∇(t^{1/2} - t^{-1/2})`. This never builds the presentation,
/// so it stays cheap for slopes with huge denominators; the degree is `n`.
pub fn alexander_from_even_cf(cf: &ContFrac) -> Result<LaurentPoly> {
    if cf.entries().iter().any(|&a| a == 0 || a % 2 != 0) {
        return Err(Error::BadExpansion(format!("{cf} is not an even expansion with nonzero entries")));
    }
    if !cf.len().is_multiple_of(2) {
        return Err(Error::Unsupported(format!("{cf} is a two-component link")));
    }
    let overflow = || Error::Overflow("Conway polynomial");
    let (mut prev, mut cur) = (Vec::<i128>::new(), vec![1i128]);
    for (k, &a) in cf.entries().iter().enumerate() {
        let b = i128::from(a / 2) * if k % 2 == 0 { 1 } else { -1 };
        let mut next = vec![0i128; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] = c.checked_mul(b).ok_or_else(overflow)?;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] = next[i].checked_add(c).ok_or_else(overflow)?;
        }
        prev = cur;
        cur = next;
    }
    // only even powers occur for a knot, and z^2 = (t - 1)^2 t^{-1}
    let z2 = LaurentPoly::new(-1, vec![1, -2, 1]);
    let mut acc = LaurentPoly::zero();
    for (deg, &c) in cur.iter().enumerate().step_by(2) {
        acc = &acc + &(&LaurentPoly::monomial(c, 0) * &z2.pow((deg / 2) as u32));
    }
    Ok(acc.normalized())
}
