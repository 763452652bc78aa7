use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::slope::{add, mul, Slope};
use crate::error::{Error, Result};

/// A continued fraction `2c + [a1, ..., am]` where
/// `[a1, ..., am] = 1/(a1 + 1/(a2 + ... + 1/am))`.
///
/// Zero entries are allowed; evaluation is projective, so `[x, 0, y]`
/// behaves like `[x + y]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ContFrac {
    entries: Vec<i64>,
    shift: i64,
}

/// Which normal form, if any, a continued fraction is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CfForm {
    Euclidean,
    Even,
    General,
}

/// Last-entry convention for [`cf_canonical_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LastEntry {
    /// Last entry at least 2 (unique form).
    #[default]
    AtLeastTwo,
    /// Split the last entry `a` into `a - 1, 1`.
    One,
}

impl ContFrac {
    pub fn new(entries: Vec<i64>) -> Self {
        ContFrac { entries, shift: 0 }
    }

    pub fn with_shift(entries: Vec<i64>, shift: i64) -> Self {
        ContFrac { entries, shift }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// The integer `c` of the `2c +` prefix.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn eval(&self) -> Slope {
        eval_cf(self)
    }

    /// `a^{-1}`: the entries in reverse order.
    pub fn reversed(&self) -> ContFrac {
        let mut entries = self.entries.clone();
        entries.reverse();
        ContFrac { entries, shift: self.shift }
    }

    /// `εa`: every entry multiplied by `sign`.
    pub fn scaled(&self, sign: i8) -> ContFrac {
        let s = i64::from(sign);
        ContFrac { entries: self.entries.iter().map(|a| a * s).collect(), shift: self.shift }
    }

    pub fn form(&self) -> CfForm {
        if self.entries.is_empty() {
            CfForm::General
        } else if self.entries.iter().all(|&a| a > 0) {
            CfForm::Euclidean
        } else if self.entries.iter().all(|&a| a != 0 && a % 2 == 0) {
            CfForm::Even
        } else {
            CfForm::General
        }
    }

    /// Values of the prefixes `2c + [a1..aj]` for `j = 0..=m` (the `j = 0` value is `2c`).
    pub fn prefix_values(&self) -> Vec<Slope> {
        (0..=self.entries.len())
            .map(|j| ContFrac::with_shift(self.entries[..j].to_vec(), self.shift).eval())
            .collect()
    }
}

impl fmt::Display for ContFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift != 0 {
            write!(f, "{}:", self.shift)?;
        }
        f.write_str("[")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for ContFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ContFrac {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseContFrac(s.to_string());
        let t = s.trim();
        let (shift, body) = match t.split_once(':') {
            Some((c, rest)) => (c.trim().parse::<i64>().map_err(|_| bad())?, rest.trim()),
            None => (0, t),
        };
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(bad)?
            .trim();
        let entries = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(ContFrac { entries, shift })
    }
}

impl Serialize for ContFrac {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ContFrac {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Evaluates `2c + [a1, ..., am]` by the backward recurrence
/// `t_{m+1} = 0`, `t_k = 1/(a_k + t_{k+1})`, carried out on projective pairs.
pub fn eval_cf(cf: &ContFrac) -> Slope {
    // t = x/y; each step (x, y) <- (y, a*y + x) keeps |det| = 1, so the pair
    // never degenerates to (0, 0).
    let (mut x, mut y): (i128, i128) = (0, 1);
    for &a in cf.entries.iter().rev() {
        (x, y) = (y, add(mul(i128::from(a), y), x));
    }
    let shift = mul(2, i128::from(cf.shift));
    Slope::from_pair(add(x, mul(shift, y)), y)
}

/// Euclidean expansion with positive entries and last entry at least 2.
pub fn cf_canonical(s: Slope) -> Result<ContFrac> {
    cf_canonical_with(s, LastEntry::AtLeastTwo)
}

/// Euclidean expansion of `s`.
///
/// The shift `c` is chosen so that `s - 2c ∈ [0, 2)`. When that remainder
/// exceeds 1 the expansion starts with a single `0` entry followed by the
/// positive expansion of its reciprocal.
pub fn cf_canonical_with(s: Slope, last: LastEntry) -> Result<ContFrac> {
    if s.is_infinite() {
        return Err(Error::NoFiniteCf);
    }
    let shift = s.floor().div_euclid(2);
    let t = s.add_int(-2 * shift);
    let shift = i64::try_from(shift).map_err(|_| Error::Overflow("cf shift"))?;
    let mut entries = if t.num() == 0 {
        Vec::new()
    } else if t.num() <= t.den() {
        euclid_unit(t.num(), t.den())?
    } else {
        let mut e = vec![0];
        e.extend(euclid_unit(t.den(), t.num())?);
        e
    };
    if last == LastEntry::One {
        if let Some(a) = entries.last_mut() {
            if *a > 1 {
                *a -= 1;
                entries.push(1);
            }
        }
    }
    Ok(ContFrac::with_shift(entries, shift))
}

/// Positive expansion of `q/p` with `0 < q <= p`.
fn euclid_unit(mut q: i128, mut p: i128) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    while q != 0 {
        let a = p / q;
        out.push(i64::try_from(a).map_err(|_| Error::Overflow("cf entry"))?);
        (p, q) = (q, p - a * q);
    }
    Ok(out)
}

/// Expansion with every entry even and nonzero, for `q/p` with exactly one
/// of `q`, `p` even.
///
/// Greedy: at each step take the even integer nearest to the reciprocal of
/// the remainder; exact ties go to the smaller absolute value.
pub fn cf_even(s: Slope) -> Result<ContFrac> {
    if s.is_infinite() {
        return Err(Error::NoFiniteCf);
    }
    if s.num() % 2 != 0 && s.den() % 2 != 0 {
        return Err(Error::OddOddParity(s));
    }
    // s = 2c + t with |t| <= 1; |t| = 1 would be odd/1, excluded above.
    let c = nearest_even(s.num(), s.den()) / 2;
    let t = s.add_int(-2 * c);
    let shift = i64::try_from(c).map_err(|_| Error::Overflow("cf shift"))?;

    let mut entries = Vec::new();
    let (mut n, mut d) = (t.num(), t.den());
    while n != 0 {
        // remainder n/d with |n| < d; the next quotient approximates d/n
        let (num, den) = if n < 0 { (-d, -n) } else { (d, n) };
        let e = nearest_even(num, den);
        entries.push(i64::try_from(e).map_err(|_| Error::Overflow("cf entry"))?);
        // new remainder: d/n - e = (d - e n)/n
        let rem_num = d - e * n;
        let rem_den = n;
        let (rn, rd) = if rem_den < 0 { (-rem_num, -rem_den) } else { (rem_num, rem_den) };
        n = rn;
        d = rd;
    }
    Ok(ContFrac::with_shift(entries, shift))
}

/// Even integer nearest to `num/den` (`den > 0`); ties toward smaller `|e|`.
fn nearest_even(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    let lo = 2 * num.div_euclid(2 * den);
    let hi = lo + 2;
    // compare num/den - lo against hi - num/den
    let dl = num - lo * den;
    let dh = hi * den - num;
    match dl.cmp(&dh) {
        std::cmp::Ordering::Less => lo,
        std::cmp::Ordering::Greater => hi,
        std::cmp::Ordering::Equal => {
            if lo.abs() <= hi.abs() {
                lo
            } else {
                hi
            }
        }
    }
}

/// Builds `2c + [ε1·a, 2c1, ε2·a^{-1}, 2c2, ε3·a, ..., εn·a^{±1}]`.
///
/// Blocks alternate between `a` and its reversal; each middle entry is
/// twice the given integer.
pub fn cf_expand_pattern(a: &ContFrac, c: i64, signs: &[i8], mids: &[i64]) -> Result<ContFrac> {
    if a.is_empty() {
        return Err(Error::EmptyExpansion);
    }
    if signs.is_empty() || mids.len() + 1 != signs.len() {
        return Err(Error::PatternShape {
            blocks: signs.len(),
            expected: signs.len().saturating_sub(1),
            got: mids.len(),
        });
    }
    let reversed = a.reversed();
    let mut entries = Vec::with_capacity(signs.len() * (a.len() + 1));
    for (j, &eps) in signs.iter().enumerate() {
        if j > 0 {
            entries.push(2 * mids[j - 1]);
        }
        let block = if j % 2 == 0 { a } else { &reversed };
        entries.extend(block.entries().iter().map(|&x| x * i64::from(eps)));
    }
    Ok(ContFrac::with_shift(entries, c))
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

    /// Independent evaluation on ordinary fractions, top-down with the
    /// ∞-rules written out explicitly.
    fn oracle_eval(entries: &[i64], shift: i64) -> Slope {
        let mut t = Slope::ZERO;
        for &a in entries.iter().rev() {
            let sum = if t.is_infinite() { Slope::INFINITY } else { t.add_int(a as i128) };
            t = if sum.is_infinite() {
                Slope::ZERO
            } else if sum.num() == 0 {
                Slope::INFINITY
            } else {
                Slope::new(sum.den(), sum.num()).unwrap()
            };
        }
        t.add_int(2 * shift as i128)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(cf(&[3, 2, 2]).eval(), s("5/17"));
        assert_eq!(cf(&[9]).eval(), s("1/9"));
        assert_eq!(cf(&[2, 2, 2, -2, -2]).eval(), s("21/50"));
        assert_eq!(cf(&[3, 0, 3, 0, 3]).eval(), s("1/9"));
        assert_eq!(cf(&[]).eval(), Slope::ZERO);
        assert_eq!(ContFrac::with_shift(vec![], 3).eval(), s("6"));
        assert_eq!(cf(&[0]).eval(), Slope::INFINITY);
        assert_eq!(cf(&[3, 0, -3]).eval(), Slope::INFINITY);
    }

    #[test]
    fn eval_matches_oracle_on_small_sequences() {
        let vals = [-3i64, -2, -1, 0, 1, 2, 3];
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    for shift in -1..=1 {
                        let e = [a, b, c];
                        assert_eq!(ContFrac::with_shift(e.to_vec(), shift).eval(), oracle_eval(&e, shift));
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(cf_canonical(s("5/17")).unwrap(), cf(&[3, 2, 2]));
        assert_eq!(cf_canonical(s("2/7")).unwrap(), cf(&[3, 2]));
        assert_eq!(cf_canonical(s("1/9")).unwrap(), cf(&[9]));
        assert_eq!(cf_canonical(s("1")).unwrap(), cf(&[1]));
        assert_eq!(cf_canonical_with(s("5/17"), LastEntry::One).unwrap(), cf(&[3, 2, 1, 1]));
        assert_eq!(cf_canonical(Slope::INFINITY), Err(Error::NoFiniteCf));
        let shifted = cf_canonical(s("-7/3")).unwrap();
        assert_eq!(shifted.eval(), s("-7/3"));
        let big = cf_canonical(s("5/3")).unwrap();
        assert_eq!(big, cf(&[0, 1, 1, 2]));
        assert_eq!(big.eval(), s("5/3"));
    }

    #[test]
    fn even_examples() {
        assert_eq!(cf_even(s("2/5")).unwrap(), cf(&[2, 2]));
        assert_eq!(cf_even(s("12/17")).unwrap(), cf(&[2, -2, 4, -2]));
        assert_eq!(cf_even(s("2/7")).unwrap(), cf(&[4, -2]));
        assert_eq!(cf_even(s("1/3")), Err(Error::OddOddParity(s("1/3"))));
        let e = cf_even(s("7/2")).unwrap();
        assert_eq!(e.eval(), s("7/2"));
        assert_eq!(e.form(), CfForm::Even);
    }

    #[test]
    fn even_length_parity_tracks_denominator() {
        // odd/even -> odd length, even/odd -> even length
        assert_eq!(cf_even(s("1/2")).unwrap().len() % 2, 1);
        assert_eq!(cf_even(s("3/8")).unwrap().len() % 2, 1);
        assert_eq!(cf_even(s("4/9")).unwrap().len() % 2, 0);
    }

    #[test]
    fn pattern_examples() {
        let p = cf_expand_pattern(&cf(&[2, 2]), 0, &[1, -1], &[1]).unwrap();
        assert_eq!(p, cf(&[2, 2, 2, -2, -2]));
        let p = cf_expand_pattern(&cf(&[3]), 0, &[1, 1, 1], &[0, 0]).unwrap();
        assert_eq!(p, cf(&[3, 0, 3, 0, 3]));
        assert_eq!(p.eval(), s("1/9"));
        assert_eq!(cf_expand_pattern(&cf(&[3]), 0, &[1], &[]).unwrap(), cf(&[3]));
        assert_eq!(cf_expand_pattern(&cf(&[]), 0, &[1], &[]), Err(Error::EmptyExpansion));
        assert!(matches!(
            cf_expand_pattern(&cf(&[3]), 0, &[1, 1], &[]),
            Err(Error::PatternShape { .. })
        ));
        // reversal of the middle block
        let p = cf_expand_pattern(&cf(&[3, 2, 2]), 1, &[1, -1, 1], &[2, -1]).unwrap();
        assert_eq!(p.entries(), &[3, 2, 2, 4, -2, -2, -3, -2, 3, 2, 2]);
        assert_eq!(p.shift(), 1);
    }

    #[test]
    fn text_round_trip() {
        for t in ["[3,2,2]", "2:[1,-4]", "[]", "-1:[0]"] {
            assert_eq!(t.parse::<ContFrac>().unwrap().to_string(), t);
        }
        assert!("[1,,2]".parse::<ContFrac>().is_err());
        assert!("3,2".parse::<ContFrac>().is_err());
    }
}
