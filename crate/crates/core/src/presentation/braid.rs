use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey_action::OrbitCertificate;
use crate::rational_cf::{cf_canonical_with, cf_even, ContFrac, LastEntry, Slope};

/// A word in the 4-strand braid generators `σ1, σ2, σ3`, merged so that
/// adjacent letters have different indices and every exponent is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct BraidWord {
    letters: Vec<(u8, i64)>,
}

impl BraidWord {
    pub const STRANDS: u8 = 4;

    pub fn new(letters: impl IntoIterator<Item = (u8, i64)>) -> Result<Self> {
        let mut b = BraidWord::default();
        for (i, e) in letters {
            if !(1..Self::STRANDS).contains(&i) {
                return Err(Error::Unsupported(format!("braid generator s{i} on {} strands", Self::STRANDS)));
            }
            b.push(i, e);
        }
        Ok(b)
    }

    fn push(&mut self, i: u8, e: i64) {
        if e == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some((j, f)) if *j == i => {
                *f += e;
                if *f == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((i, e)),
        }
    }

    pub fn letters(&self) -> &[(u8, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn crossings(&self) -> u64 {
        self.letters.iter().map(|l| l.1.unsigned_abs()).sum()
    }

    /// Single crossings `(i, ±1)` from top to bottom.
    pub fn crossing_sequence(&self) -> impl Iterator<Item = (u8, i64)> + '_ {
        self.letters
            .iter()
            .flat_map(|&(i, e)| std::iter::repeat_n((i, e.signum()), e.unsigned_abs() as usize))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (k, (i, e)) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "s{i}^{e}")?;
        }
        Ok(())
    }
}

/// The braid `σ2^{a1} σ1^{-a2} σ2^{a3} ⋯` of an odd-length expansion.
///
/// Odd positions twist the middle strands, even positions the outer pair
/// on the left; the plat closure (caps on strands 1-2 and 3-4, top and
/// bottom) is `K([a1, ..., am])`. The shift of `cf` is ignored.
pub fn cf_braid(cf: &ContFrac) -> Result<BraidWord> {
    if cf.len().is_multiple_of(2) {
        return Err(Error::BadExpansion(format!("{cf} has even length; plats need an odd number of twist boxes")));
    }
    BraidWord::new(cf.entries().iter().enumerate().map(|(k, &a)| if k % 2 == 0 { (2, a) } else { (1, -a) }))
}

/// Reads the expansion back off a braid in the generators `σ1`, `σ2`, and
/// returns its value.
pub fn braid_slope(braid: &BraidWord) -> Result<Slope> {
    let mut entries = Vec::new();
    for &(i, e) in braid.letters() {
        let want = if entries.len() % 2 == 0 { 2 } else { 1 };
        if i == 3 {
            return Err(Error::Unsupported("braid uses s3".into()));
        }
        if i != want {
            entries.push(0);
        }
        entries.push(if i == 2 { e } else { -e });
    }
    if entries.len() % 2 == 0 {
        entries.push(0);
    }
    Ok(ContFrac::new(entries).eval())
}

/// Odd-length expansion used to draw `K(s)` as a plat.
///
/// When exactly one of numerator and denominator is even this is the
/// all-even expansion of `s` with its shift dropped, and if that has even
/// length its last entry `e` is replaced by `e - 1, 1`. Otherwise it is the
/// Euclidean expansion with its shift dropped, with a trailing `1` split
/// off when needed to make the length odd. Either way the value differs
/// from `s` by an even integer. Integers give `[1]` and `∞` the empty
/// expansion `[0]`.
pub fn plat_expansion(s: Slope) -> Result<ContFrac> {
    if s.is_infinite() {
        return Ok(ContFrac::new(vec![0]));
    }
    if s.is_integer() {
        return Ok(ContFrac::new(vec![1]));
    }
    let entries = if s.num() % 2 == 0 || s.den() % 2 == 0 {
        let mut e = cf_even(s)?.entries().to_vec();
        if e.len() % 2 == 0 {
            let last = e.pop().expect("nonempty");
            e.extend([last - 1, 1]);
        }
        e
    } else {
        let e = cf_canonical_with(s, LastEntry::AtLeastTwo)?.entries().to_vec();
        if e.len() % 2 == 1 {
            e
        } else {
            cf_canonical_with(s, LastEntry::One)?.entries().to_vec()
        }
    };
    Ok(ContFrac::new(entries))
}

/// A braid whose plat closure is `K(s)`.
pub fn plat_braid(s: Slope) -> Result<BraidWord> {
    cf_braid(&plat_expansion(s)?)
}

/// The plat of the slope certified by `cert`, built block by block.
///
/// The certificate is first rewritten over the plat expansion `a` of its
/// base. Its continued fraction `[ε1 a, 2c1, ε2 a⁻¹, ...]` then has odd
/// length, every block starts on a middle-strand box, and the braid is the
/// concatenation of the blocks `b_{±}^{±1}` separated by the twists
/// `σ1^{-2c_i}`. The closure is `K(rtilde)` (the outer shift `2c0` is a
/// full-twist that does not change the link).
pub fn btilde_braid(cert: &OrbitCertificate) -> Result<BraidWord> {
    cert.validate()?;
    let a = plat_expansion(cert.base)?;
    let cert = cert.reexpress(&a)?;
    cf_braid(&cert.continued_fraction()?)
}

/// `b`, `b⁻¹`, and their sign-flipped versions for the expansion `a`.
pub fn b_block(a: &ContFrac, eps: i8, delta: i8) -> Result<BraidWord> {
    let mut block = if delta > 0 { a.clone() } else { a.reversed() };
    if eps < 0 {
        block = block.scaled(-1);
    }
    cf_braid(&block)
}
