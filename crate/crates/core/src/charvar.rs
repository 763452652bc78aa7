//! The defining polynomial of the nonabelian character variety of a
//! 2-bridge knot, and numerical checks of the containments induced by
//! epimorphisms.
//!
//! Representations are normalized as `ρ(a) = [[s, 1], [0, s⁻¹]]`,
//! `ρ(b) = [[s, 0], [u, s⁻¹]]`, and the result is written in the trace
//! coordinates `x = tr ρ(a)`, `y = tr ρ(a b⁻¹)`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{upper_presentation, FreeWord, Gen};
use crate::rational_cf::{gcd, Slope};
use crate::schubert::{components, epi_candidate, CandidateReport};

/// Polynomials in `s^{±1}` and `u`, keyed by `(deg_s, deg_u)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct SuPoly(BTreeMap<(i64, u32), i128>);

impl SuPoly {
    fn constant(c: i128) -> Self {
        Self::term(c, 0, 0)
    }

    fn term(c: i128, ds: i64, du: u32) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert((ds, du), c);
        }
        SuPoly(m)
    }

    fn add(&self, other: &Self) -> Result<Self> {
        let mut m = self.0.clone();
        for (&k, &c) in &other.0 {
            let e = m.entry(k).or_insert(0);
            *e = e.checked_add(c).ok_or(Error::Overflow("character variety polynomial"))?;
            if *e == 0 {
                m.remove(&k);
            }
        }
        Ok(SuPoly(m))
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        let mut m: BTreeMap<(i64, u32), i128> = BTreeMap::new();
        for (&(s1, u1), &c1) in &self.0 {
            for (&(s2, u2), &c2) in &other.0 {
                let c = c1.checked_mul(c2).ok_or(Error::Overflow("character variety polynomial"))?;
                let e = m.entry((s1 + s2, u1 + u2)).or_insert(0);
                *e = e.checked_add(c).ok_or(Error::Overflow("character variety polynomial"))?;
            }
        }
        m.retain(|_, c| *c != 0);
        Ok(SuPoly(m))
    }

    fn invert_s(&self) -> Self {
        SuPoly(self.0.iter().map(|(&(s, u), &c)| ((-s, u), c)).collect())
    }
}

type Mat = [SuPoly; 4];

fn mat_mul(x: &Mat, y: &Mat) -> Result<Mat> {
    let e = |i: usize, j: usize| -> Result<SuPoly> { x[2 * i].mul(&y[j])?.add(&x[2 * i + 1].mul(&y[2 + j])?) };
    Ok([e(0, 0)?, e(0, 1)?, e(1, 0)?, e(1, 1)?])
}

/// `ρ(a)`, `ρ(a)⁻¹`, `ρ(b)`, `ρ(b)⁻¹`.
fn riley_pair() -> [Mat; 4] {
    let s = |c, d| SuPoly::term(c, d, 0);
    let u = |c| SuPoly::term(c, 0, 1);
    [
        [s(1, 1), s(1, 0), SuPoly::default(), s(1, -1)],
        [s(1, -1), s(-1, 0), SuPoly::default(), s(1, 1)],
        [s(1, 1), SuPoly::default(), u(1), s(1, -1)],
        [s(1, -1), SuPoly::default(), u(-1), s(1, 1)],
    ]
}

fn evaluate(w: &FreeWord) -> Result<Mat> {
    let gens = riley_pair();
    let mut acc: Mat = [SuPoly::constant(1), SuPoly::default(), SuPoly::default(), SuPoly::constant(1)];
    for (g, e) in w.letters() {
        let m = match (g, e > 0) {
            (Gen::A, true) => &gens[0],
            (Gen::A, false) => &gens[1],
            (Gen::B, true) => &gens[2],
            (Gen::B, false) => &gens[3],
        };
        acc = mat_mul(&acc, m)?;
    }
    Ok(acc)
}

/// Integer polynomial in `x`, `y`, keyed by `(deg_x, deg_y)`, with the
/// content divided out and the leading term (highest `deg_y`, then
/// highest `deg_x`) positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BivariatePoly {
    #[serde(serialize_with = "as_triples")]
    terms: BTreeMap<(u32, u32), i128>,
    /// The gcd of the coefficients before normalization.
    pub content: i128,
}

fn as_triples<S: serde::Serializer>(terms: &BTreeMap<(u32, u32), i128>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(terms.len()))?;
    for (&(i, j), &c) in terms {
        seq.serialize_element(&(i, j, c))?;
    }
    seq.end()
}

impl BivariatePoly {
    fn from_terms(mut terms: BTreeMap<(u32, u32), i128>) -> Result<Self> {
        terms.retain(|_, c| *c != 0);
        let content = terms.values().fold(0i128, |g, &c| gcd(g, c));
        if content == 0 {
            return Err(Error::DegeneratePolynomial("zero polynomial".into()));
        }
        let lead = terms.iter().max_by_key(|(&(i, j), _)| (j, i)).map(|(_, &c)| c).expect("nonzero");
        let content = if lead < 0 { -content } else { content };
        let terms = terms.into_iter().map(|(k, c)| (k, c / content)).collect();
        Ok(BivariatePoly { terms, content: content.abs() })
    }

    /// `(i, j, c)` for the terms `c x^i y^j`.
    pub fn triples(&self) -> Vec<(u32, u32, i128)> {
        self.terms.iter().map(|(&(i, j), &c)| (i, j, c)).collect()
    }

    pub fn coeff(&self, i: u32, j: u32) -> i128 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms.iter().map(|(&(i, j), &c)| c as f64 * x.powu(i) * y.powu(j)).sum()
    }

    pub fn eval_int(&self, x: i128, y: i128) -> Option<i128> {
        self.terms.iter().try_fold(0i128, |acc, (&(i, j), &c)| {
            c.checked_mul(x.checked_pow(i)?)?.checked_mul(y.checked_pow(j)?)?.checked_add(acc)
        })
    }

    /// Sum of `|c| |x|^i |y|^j`, the scale against which residuals are
    /// measured.
    pub fn magnitude(&self, x: Complex64, y: Complex64) -> f64 {
        self.terms.iter().map(|(&(i, j), &c)| (c as f64).abs() * x.norm().powi(i as i32) * y.norm().powi(j as i32)).sum()
    }

    /// Coefficients of `Φ(x0, y)` in `y`, constant term first.
    pub fn y_slice(&self, x0: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.deg_y() as usize + 1];
        for (&(i, j), &c) in &self.terms {
            out[j as usize] += c as f64 * x0.powi(i as i32);
        }
        out
    }

    /// Roots in `y` of `Φ(x0, y)`.
    pub fn y_roots(&self, x0: f64) -> Result<Vec<Complex64>> {
        let c = self.y_slice(x0);
        let roots = poly_roots(&c)?;
        Ok(roots.into_iter().map(|r| self.polish(x0, r)).collect())
    }

    fn polish(&self, x0: f64, mut y: Complex64) -> Complex64 {
        let c = self.y_slice(x0);
        for _ in 0..50 {
            let (mut f, mut df) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for &a in c.iter().rev() {
                df = df * y + f;
                f = f * y + a;
            }
            if df.norm() == 0.0 {
                break;
            }
            let step = f / df;
            y -= step;
            if step.norm() <= 1e-15 * y.norm().max(1.0) {
                break;
            }
        }
        y
    }
}

impl std::fmt::Display for BivariatePoly {
    /// Terms by decreasing degree in `y`, then in `x`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((j, i)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = self.terms[&(i, j)];
            match (n, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut mono = String::new();
            for (var, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => mono.push_str(var),
                    _ => mono.push_str(&format!("{var}^{e}")),
                }
            }
            if c.abs() != 1 || mono.is_empty() {
                write!(f, "{}", c.abs())?;
            }
            f.write_str(&mono)?;
        }
        Ok(())
    }
}

/// Roots in `y` of `Φ_slope(x0, y)`, refined against the unexpanded
/// relation.
///
/// Expanding `Φ` in `x` produces large coefficients that cancel, so the
/// slice loses digits as the denominator grows. The roots of the slice are
/// therefore only starting points for an Aberth iteration on
/// `W₂₂ + (s - s⁻¹) W₁₂`, with `W = ρ(w)` multiplied out numerically at
/// `s + s⁻¹ = x0`.
pub fn slice_roots(slope: Slope, x0: f64) -> Result<Vec<Complex64>> {
    let phi = nonabelian_poly(slope)?;
    refined_roots(slope, &phi, x0)
}

fn refined_roots(slope: Slope, phi: &BivariatePoly, x0: f64) -> Result<Vec<Complex64>> {
    let even = slope.num() % 2 == 0;
    let w = upper_presentation(if even { slope.add_int(1) } else { slope }).w;
    let x = Complex64::new(x0, 0.0);
    let s = (x + (x * x - 4.0).sqrt()) / 2.0;
    // Φ(x, y) is the relation at u = 2 - y, or at u = 2 - (x^2 - y) for even q
    let u_of = |y: Complex64| if even { 2.0 - (x * x - y) } else { 2.0 - y };
    let du_dy = if even { 1.0 } else { -1.0 };
    // Aberth iteration started from the slice roots: all roots move at
    // once and repel each other, so none of them is lost to a neighbour
    let mut ys = phi.y_roots(x0)?;
    let n = ys.len();
    // nearly coincident starts (a spurious conjugate pair) would pin each
    // other in place, so give every start its own small offset
    for (k, y) in ys.iter_mut().enumerate() {
        let angle = 0.4 + std::f64::consts::TAU * k as f64 / n as f64;
        *y += Complex64::from_polar(1e-2 * y.norm().max(1.0), angle);
    }
    for _ in 0..500 {
        let mut largest = 0.0f64;
        for k in 0..n {
            let (f, df) = riley_numeric(&w, s, u_of(ys[k]));
            let df = df * du_dy;
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (ys[k] - ys[j]).inv()).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            ys[k] -= step;
            largest = largest.max(step.norm() / ys[k].norm().max(1.0));
        }
        if largest <= 1e-15 {
            break;
        }
    }
    Ok(ys)
}

/// `W₂₂ + (s - s⁻¹) W₁₂` and its derivative in `u`.
fn riley_numeric(w: &FreeWord, s: Complex64, u: Complex64) -> (Complex64, Complex64) {
    type C = Complex64;
    let zero = C::new(0.0, 0.0);
    let one = C::new(1.0, 0.0);
    let mul = |x: &[C; 4], y: &[C; 4]| {
        [
            x[0] * y[0] + x[1] * y[2],
            x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3],
        ]
    };
    let add = |x: [C; 4], y: [C; 4]| [x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]];
    let si = s.inv();
    // (matrix, derivative in u)
    let gens = [
        ([s, one, zero, si], [zero; 4]),
        ([si, -one, zero, s], [zero; 4]),
        ([s, zero, u, si], [zero, zero, one, zero]),
        ([si, zero, -u, s], [zero, zero, -one, zero]),
    ];
    let (mut m, mut dm) = ([one, zero, zero, one], [zero; 4]);
    for (g, e) in w.letters() {
        let (x, dx) = &gens[match (g, e > 0) {
            (Gen::A, true) => 0,
            (Gen::A, false) => 1,
            (Gen::B, true) => 2,
            (Gen::B, false) => 3,
        }];
        dm = add(mul(&dm, x), mul(&m, dx));
        m = mul(&m, x);
    }
    let k = s - si;
    (m[3] + k * m[1], dm[3] + k * dm[1])
}

/// Complex roots of `Σ c_k y^k` from the companion matrix.
fn poly_roots(c: &[f64]) -> Result<Vec<Complex64>> {
    let n = c.iter().rposition(|&a| a != 0.0).ok_or_else(|| Error::DegeneratePolynomial("zero slice".into()))?;
    if n == 0 {
        return Err(Error::DegeneratePolynomial("constant slice".into()));
    }
    let lead = c[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    Ok(m.complex_eigenvalues().iter().copied().collect())
}

/// `s^k + s^{-k}` as a polynomial in `x = s + s⁻¹`, coefficients by
/// degree.
fn chebyshev(k: u32) -> Vec<i128> {
    let (mut prev, mut cur) = (vec![2i128], vec![0, 1]);
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let mut next = vec![0i128; cur.len() + 1];
        for (i, &a) in cur.iter().enumerate() {
            next[i + 1] += a;
        }
        for (i, &a) in prev.iter().enumerate() {
            next[i] -= a;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// The polynomial `Φ_{q/p}(x, y)` whose zero set contains the characters
/// of all nonabelian representations of `G(K(q/p))`.
///
/// With `W = ρ(w)` for the word `w` of the upper presentation, the
/// relation holds exactly when `W₂₂ + (s - s⁻¹) W₁₂` vanishes (for odd
/// `q`). That expression is invariant under `s ↦ s⁻¹` (asserted), so it
/// rewrites in `x`, and `u = 2 - y`. For even `q`, `b` is replaced by
/// `b⁻¹`, which turns `y` into `x² - y`.
pub fn nonabelian_poly(slope: Slope) -> Result<BivariatePoly> {
    if slope.is_infinite() || components(slope) != 1 {
        return Err(Error::Unsupported(format!(
            "K({slope}) is a link; its character variety needs three variables"
        )));
    }
    if slope.den() < 3 {
        return Err(Error::Unsupported(format!("K({slope}) is trivial")));
    }
    let odd = if slope.num() % 2 == 0 { slope.add_int(1) } else { slope };
    let w = upper_presentation(odd).w;
    let m = evaluate(&w)?;
    let s_minus = SuPoly::term(1, 1, 0).add(&SuPoly::term(-1, -1, 0))?;
    let phi = m[3].add(&s_minus.mul(&m[1])?)?;
    if phi.invert_s() != phi {
        return Err(Error::DegeneratePolynomial(format!("Riley polynomial of {slope} is not symmetric in s")));
    }

    // symmetric Laurent polynomial in s, for each power of u, to x
    let mut xu: BTreeMap<(u32, u32), i128> = BTreeMap::new();
    for (&(ds, du), &c) in &phi.0 {
        if ds < 0 {
            continue;
        }
        // s^k + s^{-k} carries the coefficient once; s^0 alone is halved
        let basis = chebyshev(ds.unsigned_abs() as u32);
        for (i, &b) in basis.iter().enumerate() {
            let v = if ds == 0 { c * b / 2 } else { c * b };
            *xu.entry((i as u32, du)).or_insert(0) += v;
        }
    }

    // u = 2 - y, then y -> x^2 - y for even q
    let mut terms: BTreeMap<(u32, u32), i128> = BTreeMap::new();
    for (&(i, k), &c) in &xu {
        for (j, b) in binomial_row(k).into_iter().enumerate() {
            // (2 - y)^k = Σ C(k, j) 2^{k-j} (-y)^j
            let coef = c * b * 2i128.pow(k - j as u32) * if j % 2 == 0 { 1 } else { -1 };
            *terms.entry((i, j as u32)).or_insert(0) += coef;
        }
    }
    if slope.num() % 2 == 0 {
        let mut swapped: BTreeMap<(u32, u32), i128> = BTreeMap::new();
        for (&(i, j), &c) in &terms {
            // (x^2 - y)^j
            for (l, b) in binomial_row(j).into_iter().enumerate() {
                let sign = if l % 2 == 0 { 1 } else { -1 };
                *swapped.entry((i + 2 * (j - l as u32), l as u32)).or_insert(0) += c * b * sign;
            }
        }
        terms = swapped;
    }
    BivariatePoly::from_terms(terms)
}

fn binomial_row(n: u32) -> Vec<i128> {
    let mut row = vec![1i128];
    for k in 0..n as i128 {
        let next = row[k as usize] * (i128::from(n) - k) / (k + 1);
        row.push(next);
    }
    row
}

/// Options for [`contains_subvariety`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingOptions {
    pub n_samples: usize,
    pub tol: f64,
    pub seed: u64,
    /// Require `rtilde → r` to be an orbit candidate and use the
    /// representatives it found.
    pub check_candidate: bool,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions { n_samples: 20, tol: 1e-8, seed: 0, check_candidate: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    /// The sample point `x0 = num / den`.
    pub x: (i64, i64),
    pub y: (f64, f64),
    /// `|Φ_rtilde(x0, y)|` relative to the size of its terms.
    pub residual: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContainmentReport {
    pub rtilde: Slope,
    pub r: Slope,
    pub samples: Vec<Sample>,
    pub pass_fraction: f64,
    pub pass: bool,
}

/// Samples the curve `Φ_r = 0` and checks that `Φ_rtilde` vanishes there.
///
/// An epimorphism `G(K(rtilde)) → G(K(r))` that is the identity on the
/// meridian pair pulls every representation of `G(K(r))` back to one of
/// `G(K(rtilde))` with the same trace coordinates. For each sample `x0`
/// (rational, in `[-3, 3]`), all roots `y` of `Φ_r(x0, y)` are tested.
pub fn contains_subvariety(rtilde: Slope, r: Slope, opts: &SamplingOptions) -> Result<ContainmentReport> {
    let (rt_rep, r_rep) = if opts.check_candidate {
        let rep = epi_candidate(rtilde, r)?;
        match (rep.rtilde_rep, rep.r_rep) {
            (Some(a), Some(b)) if rep.orbit_candidate => (a, b),
            _ => return Err(Error::NotCandidate { rtilde, r }),
        }
    } else {
        (rtilde, r)
    };
    let phi_r = nonabelian_poly(r_rep)?;
    let phi_rt = nonabelian_poly(rt_rep)?;
    if phi_r.deg_y() == 0 {
        return Err(Error::DegeneratePolynomial(format!("Φ for {r} has no y-dependence")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let den = 64i64;
    let mut samples = Vec::new();
    for _ in 0..opts.n_samples {
        let num = rng.gen_range(-3 * den..=3 * den);
        let x0 = num as f64 / den as f64;
        for y in refined_roots(r_rep, &phi_r, x0)? {
            let x = Complex64::new(x0, 0.0);
            let residual = phi_rt.eval(x, y).norm() / phi_rt.magnitude(x, y).max(1.0);
            samples.push(Sample { x: (num, den), y: (y.re, y.im), residual, ok: residual <= opts.tol });
        }
    }
    let passed = samples.iter().filter(|s| s.ok).count();
    let pass_fraction = if samples.is_empty() { 0.0 } else { passed as f64 / samples.len() as f64 };
    Ok(ContainmentReport { rtilde, r, pass: passed == samples.len() && !samples.is_empty(), pass_fraction, samples })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentBound {
    pub chain: Vec<Slope>,
    pub bound: usize,
    /// The candidate report for each consecutive pair `(chain[i+1], chain[i])`.
    pub links: Vec<CandidateReport>,
}

/// Lower bound for the number of irreducible components of the character
/// variety of the last knot in a chain `K(c_0) ← K(c_1) ← ⋯`, where each
/// group surjects onto the previous one.
///
/// Each `c_i` contributes the pulled-back curve of `K(c_i)`, and these are
/// distinct, so the chain length is a lower bound.
pub fn component_lower_bound(chain: &[Slope]) -> Result<ComponentBound> {
    if let Some(&s) = chain.iter().find(|&&s| s.is_infinite() || components(s) != 1) {
        return Err(Error::Unsupported(format!("K({s}) is not a knot")));
    }
    let mut links = Vec::new();
    for (index, pair) in chain.windows(2).enumerate() {
        let report = epi_candidate(pair[1], pair[0])?;
        if !report.orbit_candidate {
            return Err(Error::ChainBroken { index, from: pair[1], to: pair[0] });
        }
        links.push(report);
    }
    Ok(ComponentBound { chain: chain.to_vec(), bound: chain.len(), links })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Slope {
        x.parse().unwrap()
    }

    #[test]
    fn trefoil() {
        let phi = nonabelian_poly(s("1/3")).unwrap();
        // y = x^2 - 1
        assert_eq!(phi.triples(), vec![(0, 0, 1), (0, 1, 1), (2, 0, -1)]);
        assert_eq!(phi.eval_int(2, 3), Some(0));
        assert_eq!(phi.to_string(), "y - x^2 + 1");
    }

    #[test]
    fn explicit_parabolic_pair() {
        // A = [[1,1],[0,1]], B = [[1,0],[-1,1]] satisfy ABA = BAB
        let mul = |x: [i64; 4], y: [i64; 4]| {
            [x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]]
        };
        let (a, b) = ([1, 1, 0, 1], [1, 0, -1, 1]);
        assert_eq!(mul(mul(a, b), a), mul(mul(b, a), b));
        let b_inv = [1, 0, 1, 1];
        let ab_inv = mul(a, b_inv);
        let (x, y) = (i128::from(a[0] + a[3]), i128::from(ab_inv[0] + ab_inv[3]));
        assert_eq!((x, y), (2, 3));
        assert_eq!(nonabelian_poly(s("1/3")).unwrap().eval_int(x, y), Some(0));
    }

    #[test]
    fn degrees_in_y() {
        for p in (3..40i128).step_by(2) {
            for q in 1..p {
                let Ok(sl) = Slope::new(q, p) else { continue };
                if sl.den() != p {
                    continue;
                }
                let phi = nonabelian_poly(sl).unwrap();
                assert_eq!(phi.deg_y() as i128, (p - 1) / 2, "{sl}");
            }
        }
    }

    #[test]
    fn slices() {
        let five_one = nonabelian_poly(s("1/5")).unwrap();
        for x0 in [-1.25, 0.5, 2.0, 2.75] {
            assert_eq!(five_one.y_roots(x0).unwrap().len(), 2);
        }
        let fig8 = nonabelian_poly(s("2/5")).unwrap();
        let roots = fig8.y_roots(2.0).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - roots[1]).norm() > 1e-6);
        assert!(roots.iter().all(|y| fig8.eval(Complex64::new(2.0, 0.0), *y).norm() < 1e-9));
    }

    #[test]
    fn containment() {
        let opts = SamplingOptions::default();
        let rep = contains_subvariety(s("1/9"), s("1/3"), &opts).unwrap();
        assert!(rep.pass, "{:?}", rep.samples.iter().map(|x| x.residual).fold(0.0, f64::max));
        let same = contains_subvariety(s("5/17"), s("5/17"), &SamplingOptions { tol: 1e-10, ..opts }).unwrap();
        assert!(same.pass);
        let skipped = SamplingOptions { check_candidate: false, ..opts };
        assert!(!contains_subvariety(s("1/3"), s("2/5"), &skipped).unwrap().pass);
        assert!(contains_subvariety(s("2/5"), s("1/3"), &opts).is_err());
    }

    #[test]
    fn chains() {
        assert_eq!(component_lower_bound(&[s("1/3"), s("1/9")]).unwrap().bound, 2);
        assert_eq!(component_lower_bound(&[s("2/5")]).unwrap().bound, 1);
        assert!(matches!(component_lower_bound(&[s("1/3"), s("2/5")]), Err(Error::ChainBroken { index: 0, .. })));
        assert!(component_lower_bound(&[s("1/2")]).is_err());
    }

    #[test]
    fn links_are_rejected() {
        assert!(matches!(nonabelian_poly(s("1/4")), Err(Error::Unsupported(_))));
    }
}
