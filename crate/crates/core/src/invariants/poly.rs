use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// An integer Laurent polynomial `Σ c_i t^{low + i}`.
///
/// Kept trimmed: the first and last stored coefficients are nonzero, and
/// the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<i128>,
}

fn checked(x: Option<i128>) -> i128 {
    x.expect("polynomial coefficient overflow")
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i128, e: i64) -> Self {
        Self::new(e, vec![c])
    }

    /// `t - 1`.
    pub fn t_minus_one() -> Self {
        Self::new(0, vec![-1, 1])
    }

    pub fn new(low: i64, coeffs: Vec<i128>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Coefficient of `t^e`.
    pub fn coeff(&self, e: i64) -> i128 {
        let i = e - self.low;
        if i < 0 {
            0
        } else {
            self.coeffs.get(i as usize).copied().unwrap_or(0)
        }
    }

    /// Highest minus lowest exponent; `None` for zero.
    pub fn span(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.coeffs.len() - 1)
    }

    /// Representative of the class up to `±t^k`: lowest exponent 0 and a
    /// positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let sign = if self.coeffs.last().is_some_and(|&c| c < 0) { -1 } else { 1 };
        LaurentPoly { low: 0, coeffs: self.coeffs.iter().map(|c| c * sign).collect() }
    }

    /// Equality up to multiplication by `±t^k`.
    pub fn associate(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// `p(1/t)`.
    pub fn mirror(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        let high = self.low + self.coeffs.len() as i64 - 1;
        Self::new(-high, coeffs)
    }

    pub fn eval_int(&self, t: i128) -> Option<i128> {
        if self.is_zero() {
            return Some(0);
        }
        if self.low < 0 && t.abs() != 1 {
            return None;
        }
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(t)?.checked_add(c)?;
        }
        let mut scale: i128 = 1;
        for _ in 0..self.low.unsigned_abs() {
            scale = scale.checked_mul(t)?;
        }
        if self.low >= 0 {
            acc.checked_mul(scale)
        } else {
            // t = ±1, so t^{-k} = t^k
            acc.checked_mul(scale)
        }
    }

    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + Complex64::new(c as f64, 0.0);
        }
        acc * t.powi(self.low as i32)
    }

    /// Exact quotient `self / d` in `Z[t, t⁻¹]`, if it exists.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        let m = d.coeffs.len();
        if n < m {
            return None;
        }
        let lead = *d.coeffs.last().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i128; n - m + 1];
        for i in (0..=n - m).rev() {
            let top = rem[i + m - 1];
            if top % lead != 0 {
                return None;
            }
            let q = top / lead;
            quot[i] = q;
            if q != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] = checked(rem[i + j].checked_sub(checked(q.checked_mul(dc))));
                }
            }
        }
        rem.iter().all(|&c| c == 0).then(|| Self::new(self.low - d.low, quot))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i64).max(other.low + other.coeffs.len() as i64);
        let coeffs = (low..high).map(|e| checked(self.coeff(e).checked_add(other.coeff(e)))).collect();
        LaurentPoly::new(low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, other: &LaurentPoly) -> LaurentPoly {
        self + &(-other)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = checked(coeffs[i + j].checked_add(checked(a.checked_mul(b))));
            }
        }
        LaurentPoly::new(self.low + other.low, coeffs)
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, other: LaurentPoly) -> LaurentPoly {
                (&self).$f(&other)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let e = self.low + i as i64;
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            if a != 1 || e == 0 {
                write!(f, "{a}")?;
            }
            match e {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// True iff `d1` divides `d2` in `Z[t, t⁻¹]`.
pub fn divides(d1: &LaurentPoly, d2: &LaurentPoly) -> bool {
    if d2.is_zero() {
        return true;
    }
    d2.div_exact(d1).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(low: i64, c: &[i128]) -> LaurentPoly {
        LaurentPoly::new(low, c.to_vec())
    }

    #[test]
    fn arithmetic() {
        let a = p(0, &[1, -1, 1]);
        let b = p(0, &[1, 1]);
        assert_eq!(&a * &b, p(0, &[1, 0, 0, 1]));
        assert_eq!(&(&a * &b) - &a, p(0, &[0, 1, -1, 1]));
        assert_eq!(&a + &(-&a), LaurentPoly::zero());
        assert_eq!(p(0, &[0, 0, 3, 0]), p(2, &[3]));
        assert!(p(3, &[0]).is_zero());
    }

    #[test]
    fn normalization_and_units() {
        let a = p(-2, &[-1, 3, -1]);
        assert_eq!(a.normalized(), p(0, &[1, -3, 1]));
        assert!(a.associate(&p(5, &[1, -3, 1])));
        assert_eq!(p(0, &[1, 2]).mirror(), p(-1, &[2, 1]));
    }

    #[test]
    fn exact_division() {
        let nine_one = p(0, &[1, -1, 1, -1, 1, -1, 1, -1, 1]);
        let trefoil = p(0, &[1, -1, 1]);
        assert_eq!(nine_one.div_exact(&trefoil), Some(p(0, &[1, 0, 0, -1, 0, 0, 1])));
        assert!(divides(&trefoil, &nine_one));
        assert!(divides(&trefoil, &trefoil));
        assert!(!divides(&trefoil, &p(0, &[1, -3, 1])));
        assert!(!divides(&p(0, &[2]), &p(0, &[1, 1])));
        assert!(divides(&p(-3, &[1, -1, 1]), &p(4, &[1, -1, 1, -1, 1, -1, 1, -1, 1])));
    }

    #[test]
    fn evaluation_and_display() {
        let fig8 = p(0, &[1, -3, 1]);
        assert_eq!(fig8.eval_int(-1), Some(5));
        assert_eq!(p(-1, &[1, -1, 1]).eval_int(-1), Some(-3));
        assert_eq!(fig8.to_string(), "t^2 - 3t + 1");
        assert_eq!(p(-1, &[-2, 0, 1]).to_string(), "t - 2t^-1");
    }
}
