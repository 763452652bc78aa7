use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{upper_presentation, FreeWord};
use crate::rational_cf::Slope;

/// The field with `q = p^k` elements, as addition and multiplication
/// tables on `0..q`. Element `x` stands for the polynomial over `F_p`
/// whose coefficients are the base-`p` digits of `x`.
#[derive(Debug, Clone)]
pub struct FiniteField {
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut n, mut k) = (q, 0);
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    (n == 1).then_some((p, k))
}

impl FiniteField {
    /// Largest supported order.
    pub const MAX_ORDER: u32 = 64;

    pub fn new(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q).filter(|_| q <= Self::MAX_ORDER).ok_or(Error::FieldOrder(q))?;
        let (p, k, q) = (p as usize, k as usize, q as usize);
        let digits = |mut x: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let pack = |v: &[usize]| v.iter().rev().fold(0usize, |acc, &d| acc * p + d);
        let modulus = irreducible(p, k);
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for x in 0..q {
            let dx = digits(x);
            for y in 0..q {
                let dy = digits(y);
                let s: Vec<usize> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x * q + y] = pack(&s) as u16;
                mul[x * q + y] = pack(&poly_mul_mod(&dx, &dy, &modulus, p)) as u16;
            }
        }
        let neg = (0..q).map(|x| (0..q).find(|&y| add[x * q + y] == 0).expect("additive inverse") as u16).collect();
        Ok(FiniteField { q, add, mul, neg })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn add(&self, x: u16, y: u16) -> u16 {
        self.add[usize::from(x) * self.q + usize::from(y)]
    }

    pub fn mul(&self, x: u16, y: u16) -> u16 {
        self.mul[usize::from(x) * self.q + usize::from(y)]
    }

    pub fn neg(&self, x: u16) -> u16 {
        self.neg[usize::from(x)]
    }

    pub fn sub(&self, x: u16, y: u16) -> u16 {
        self.add(x, self.neg(y))
    }
}

/// Product of two polynomials (coefficient vectors of length `k`) reduced
/// by the monic `modulus` of degree `k`.
fn poly_mul_mod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let k = a.len();
    let mut prod = vec![0usize; 2 * k.max(1) - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c != 0 {
            // x^d = x^{d-k} · x^k and x^k = -(modulus without its top term)
            for (i, &m) in modulus[..k].iter().enumerate() {
                prod[d - k + i] = (prod[d - k + i] + (p - c) * m) % p;
            }
            prod[d] = 0;
        }
    }
    prod.truncate(k);
    prod
}

/// A monic irreducible polynomial of degree `k` over `F_p`, as its `k + 1`
/// coefficients from the constant term up; found by testing that it has
/// no factor of degree at most `k / 2`.
fn irreducible(p: usize, k: usize) -> Vec<usize> {
    if k == 1 {
        return vec![0, 1];
    }
    let monic = |n: usize, deg: usize| -> Vec<usize> {
        let mut v: Vec<usize> = (0..deg)
            .scan(n, |x, _| {
                let d = *x % p;
                *x /= p;
                Some(d)
            })
            .collect();
        v.push(1);
        v
    };
    let divides = |f: &[usize], g: &[usize]| -> bool {
        // remainder of g by monic f
        let mut r = g.to_vec();
        let df = f.len() - 1;
        for d in (df..r.len()).rev() {
            let c = r[d];
            if c != 0 {
                for (i, &m) in f.iter().enumerate() {
                    r[d - df + i] = (r[d - df + i] + (p - c) * m) % p;
                }
            }
        }
        r[..df].iter().all(|&x| x == 0)
    };
    (0..p.pow(k as u32))
        .map(|n| monic(n, k))
        .find(|g| (1..=k / 2).all(|d| (0..p.pow(d as u32)).all(|n| !divides(&monic(n, d), g))))
        .expect("irreducible polynomials exist in every degree")
}

/// `SL(2, F_q)` with a full multiplication table.
pub struct Sl2 {
    pub field: FiniteField,
    pub elements: Vec<[u16; 4]>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: u32,
}

impl Sl2 {
    pub fn new(q: u32) -> Result<Self> {
        let field = FiniteField::new(q)?;
        let n = field.order() as u16;
        let det = |m: &[u16; 4]| field.sub(field.mul(m[0], m[3]), field.mul(m[1], m[2]));
        let mut elements = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let m = [a, b, c, d];
                        if det(&m) == 1 {
                            elements.push(m);
                        }
                    }
                }
            }
        }
        let index: std::collections::HashMap<[u16; 4], u32> =
            elements.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        let prod = |x: &[u16; 4], y: &[u16; 4]| {
            let f = &field;
            [
                f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])),
                f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
                f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])),
                f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3])),
            ]
        };
        let table: Vec<u32> =
            elements.iter().flat_map(|x| elements.iter().map(|y| index[&prod(x, y)]).collect::<Vec<_>>()).collect();
        let inverse = elements.iter().map(|m| index[&[m[3], field.neg(m[1]), field.neg(m[2]), m[0]]]).collect();
        let identity = index[&[1, 0, 0, 1]];
        Ok(Sl2 { field, elements, table, inverse, identity })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.len() + y as usize]
    }

    pub fn evaluate(&self, w: &FreeWord, a: u32, b: u32) -> u32 {
        let (ai, bi) = (self.inverse[a as usize], self.inverse[b as usize]);
        w.evaluate(self.identity, [&a, &ai, &b, &bi], |x, y| self.mul(*x, *y))
    }

    pub fn is_identity(&self, x: u32) -> bool {
        x == self.identity
    }
}

/// Outcome of [`finite_quotient_implication`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteQuotientResult {
    pub q: u32,
    pub holds: bool,
    pub pairs_checked: usize,
    /// Pairs satisfying the relator of `r`.
    pub solutions: usize,
    /// A pair `(A, B)` with `rel_r(A, B) = 1` but `rel_rtilde(A, B) != 1`,
    /// entries row by row as field elements.
    pub witness: Option<[[u16; 4]; 2]>,
}

/// Default bound on the number of pairs examined.
pub const MAX_PAIRS: usize = 4_000_000;

/// Checks that every pair of `SL(2, F_q)` satisfying the upper relator of
/// `r` also satisfies that of `rtilde`.
///
/// This is a necessary condition for an epimorphism
/// `G(K(rtilde)) → G(K(r))` sending `a ↦ a`, `b ↦ b`.
pub fn finite_quotient_implication(rtilde: Slope, r: Slope, q: u32) -> Result<FiniteQuotientResult> {
    finite_quotient_implication_capped(rtilde, r, q, MAX_PAIRS)
}

pub fn finite_quotient_implication_capped(
    rtilde: Slope,
    r: Slope,
    q: u32,
    max_pairs: usize,
) -> Result<FiniteQuotientResult> {
    let group = Sl2::new(q)?;
    finite_quotient_with(&group, q, rtilde, r, max_pairs)
}

/// [`finite_quotient_implication`] over a prebuilt group.
pub fn finite_quotient_with(
    group: &Sl2,
    q: u32,
    rtilde: Slope,
    r: Slope,
    max_pairs: usize,
) -> Result<FiniteQuotientResult> {
    let n = group.len();
    if n.saturating_mul(n) > max_pairs {
        return Err(Error::ResourceCap(format!("|SL(2,{q})|^2 = {} pairs exceeds {max_pairs}", n * n)));
    }
    let rel_r = upper_presentation(r).relator;
    let rel_rt = upper_presentation(rtilde).relator;
    let mut solutions = 0;
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            if !group.is_identity(group.evaluate(&rel_r, a, b)) {
                continue;
            }
            solutions += 1;
            if !group.is_identity(group.evaluate(&rel_rt, a, b)) {
                let w = [group.elements[a as usize], group.elements[b as usize]];
                return Ok(FiniteQuotientResult {
                    q,
                    holds: false,
                    pairs_checked: a as usize * n + b as usize + 1,
                    solutions,
                    witness: Some(w),
                });
            }
        }
    }
    Ok(FiniteQuotientResult { q, holds: true, pairs_checked: n * n, solutions, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Slope {
        x.parse().unwrap()
    }

    #[test]
    fn fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            // every nonzero element is invertible
            for x in 1..q as u16 {
                assert!((1..q as u16).any(|y| f.mul(x, y) == 1), "q={q} x={x}");
            }
            // distributivity on a sample
            for x in 0..q as u16 {
                for y in 0..q as u16 {
                    let z = (x + y) % q as u16;
                    assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                }
            }
        }
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(1).is_err());
    }

    #[test]
    fn group_orders() {
        for (q, n) in [(2, 6), (3, 24), (4, 60), (5, 120)] {
            assert_eq!(Sl2::new(q).unwrap().len(), n);
        }
    }

    #[test]
    fn implications() {
        assert!(finite_quotient_implication(s("1/9"), s("1/3"), 3).unwrap().holds);
        assert!(finite_quotient_implication(s("2/5"), s("2/5"), 4).unwrap().holds);
        let r = finite_quotient_implication(s("2/5"), s("1/3"), 5).unwrap();
        assert!(!r.holds);
        let [a, b] = r.witness.unwrap();
        let g = Sl2::new(5).unwrap();
        let idx = |m: [u16; 4]| g.elements.iter().position(|x| *x == m).unwrap() as u32;
        let (a, b) = (idx(a), idx(b));
        assert!(g.is_identity(g.evaluate(&upper_presentation(s("1/3")).relator, a, b)));
        assert!(!g.is_identity(g.evaluate(&upper_presentation(s("2/5")).relator, a, b)));
        assert!(matches!(finite_quotient_implication_capped(s("1/9"), s("1/3"), 5, 100), Err(Error::ResourceCap(_))));
    }
}
