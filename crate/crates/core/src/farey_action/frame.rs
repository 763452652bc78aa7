use serde::Serialize;

use super::moebius::MoebiusMap;
use crate::error::{Error, Result};
use crate::rational_cf::{cf_canonical, ContFrac, Slope};

/// The matrix `L(a1) U(a2) L(a3) ⋯` of a continued fraction, with the
/// `2c` shift applied on the left.
///
/// It sends `∞` to the value when the length is odd and `0` to the value
/// when the length is even.
pub fn cf_matrix(cf: &ContFrac) -> MoebiusMap {
    let mut m = MoebiusMap::translation(2 * i128::from(cf.shift()));
    for (i, &a) in cf.entries().iter().enumerate() {
        let step = if i % 2 == 0 { MoebiusMap::lower(a) } else { MoebiusMap::upper(a) };
        m = m.compose(&step);
    }
    m
}

/// Coordinates adapted to a non-integral slope `r = 2c + [a1, ..., am]`.
///
/// `M` sends `∞ ↦ r`, `0 ↦ r_{m-1}` and `-1 ↦ r' = [a1, ..., am - 1]`.
/// In these coordinates `Γ_r` is the group `t ↦ ±t + 2k`, generated by
/// `t ↦ -t` and `t ↦ -2 - t`.
#[derive(Debug, Clone)]
pub struct Frame {
    expansion: ContFrac,
    base: Slope,
    m: MoebiusMap,
    m_inv: MoebiusMap,
    r_prev: Slope,
    r_prime: Slope,
}

impl Frame {
    pub fn new(expansion: &ContFrac) -> Result<Frame> {
        let base = expansion.eval();
        if base.is_infinite() || base.is_integer() || expansion.is_empty() {
            return Err(Error::BadExpansion(expansion.to_string()));
        }
        let mut m = cf_matrix(expansion);
        if expansion.len().is_multiple_of(2) {
            m = m.compose(&MoebiusMap::inversion());
        }
        let frame = Frame {
            expansion: expansion.clone(),
            base,
            m,
            m_inv: m.inverse(),
            r_prev: m.apply(Slope::ZERO),
            r_prime: m.apply(Slope::integer(-1)),
        };
        debug_assert_eq!(frame.m.apply(Slope::INFINITY), base);
        Ok(frame)
    }

    /// Frame built from the Euclidean expansion of `r`.
    pub fn canonical(r: Slope) -> Result<Frame> {
        check_generic(r)?;
        Frame::new(&cf_canonical(r)?)
    }

    pub fn expansion(&self) -> &ContFrac {
        &self.expansion
    }

    pub fn base(&self) -> Slope {
        self.base
    }

    pub fn matrix(&self) -> MoebiusMap {
        self.m
    }

    /// `r_{m-1}`, the value of the expansion with its last entry removed.
    pub fn r_prev(&self) -> Slope {
        self.r_prev
    }

    /// `r' = [a1, ..., a_m - 1]`.
    pub fn r_prime(&self) -> Slope {
        self.r_prime
    }

    pub fn to_local(&self, s: Slope) -> Slope {
        self.m_inv.apply(s)
    }

    pub fn from_local(&self, t: Slope) -> Slope {
        self.m.apply(t)
    }

    /// The element `M ∘ (t ↦ ηt + 2c) ∘ M⁻¹` of `Γ_r`.
    pub fn gamma_r(&self, eta: i8, c: i64) -> MoebiusMap {
        dihedral(eta, 2 * i128::from(c)).conjugate_by(&self.m)
    }

    /// Fixes `r` and `r_{m-1}`.
    pub fn b1(&self) -> MoebiusMap {
        self.gamma_r(-1, 0)
    }

    /// Fixes `r` and `r'`.
    pub fn b2(&self) -> MoebiusMap {
        MoebiusMap::flip(-2).conjugate_by(&self.m)
    }

    /// Reads an element of `Γ_r` back as `(η, c)`; `None` if it is not one.
    pub fn classify_gamma_r(&self, g: &MoebiusMap) -> Option<(i8, i64)> {
        let (eta, k) = classify_dihedral(&self.m_inv.compose(g).compose(&self.m))?;
        i64::try_from(k / 2).ok().map(|c| (eta, c))
    }
}

/// `s ↦ ηs + k`.
pub(crate) fn dihedral(eta: i8, k: i128) -> MoebiusMap {
    MoebiusMap::new(i128::from(eta), k, 0, 1).expect("unimodular")
}

/// Reads `s ↦ ηs + k` with `k` even; `None` for anything else.
pub(crate) fn classify_dihedral(g: &MoebiusMap) -> Option<(i8, i128)> {
    let [a, b, c, d] = g.entries();
    if c != 0 || d.abs() != 1 || a.abs() != 1 {
        return None;
    }
    let eta = if a * d > 0 { 1 } else { -1 };
    let k = b * d;
    (k % 2 == 0).then_some((eta, k))
}

/// Reads an element of `Γ_∞` as `(η, c)` with the map `s ↦ ηs - 2c`.
pub fn classify_gamma_inf(g: &MoebiusMap) -> Option<(i8, i64)> {
    let (eta, k) = classify_dihedral(g)?;
    i64::try_from(-k / 2).ok().map(|c| (eta, c))
}

/// The element `s ↦ ηs - 2c` of `Γ_∞`, equal to `(A1 A2)^c` or `(A1 A2)^c A1`.
pub fn gamma_inf(eta: i8, c: i64) -> MoebiusMap {
    dihedral(eta, -2 * i128::from(c))
}

/// Folds a finite slope into `[0, 1]` with an element of `Γ_∞`.
///
/// Returns the element `g` and `g(s)`.
pub fn fold_inf(s: Slope) -> (MoebiusMap, Slope) {
    assert!(!s.is_infinite(), "fold_inf of inf");
    let k = s.floor().div_euclid(2);
    let mut g = MoebiusMap::translation(-2 * k);
    let mut t = s.add_int(-2 * k);
    if t > Slope::integer(1) {
        g = MoebiusMap::flip(2).compose(&g);
        t = MoebiusMap::flip(2).apply(t);
    }
    (g, t)
}

/// Rejects the slopes for which `Γ̂_r` is not a free product of two
/// infinite dihedral groups.
pub(crate) fn check_generic(r: Slope) -> Result<()> {
    if r.is_infinite() {
        Err(Error::SpecialSlope { slope: r, kind: "infinity" })
    } else if r.is_integer() {
        Err(Error::SpecialSlope { slope: r, kind: "integer" })
    } else {
        Ok(())
    }
}

/// The reflections `A1, A2` generating `Γ_∞` and `B1, B2` generating `Γ_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Generators {
    pub a1: MoebiusMap,
    pub a2: MoebiusMap,
    pub b1: MoebiusMap,
    pub b2: MoebiusMap,
}

pub fn gamma_generators(r: Slope) -> Result<Generators> {
    let frame = Frame::canonical(r)?;
    Ok(Generators {
        a1: MoebiusMap::negation(),
        a2: MoebiusMap::flip(2),
        b1: frame.b1(),
        b2: frame.b2(),
    })
}

/// The path `∞, r_0, r_1, ..., r_m` of convergents of a continued fraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgePath {
    pub vertices: Vec<Slope>,
}

impl EdgePath {
    /// True when every consecutive pair spans an edge of the Farey tessellation.
    pub fn is_unimodular(&self) -> bool {
        self.vertices.windows(2).all(|w| {
            let det = w[0].num() * w[1].den() - w[1].num() * w[0].den();
            det.abs() == 1
        })
    }
}

pub fn edge_path(cf: &ContFrac) -> EdgePath {
    let mut vertices = vec![Slope::INFINITY];
    vertices.extend(cf.prefix_values());
    EdgePath { vertices }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Slope {
        x.parse().unwrap()
    }

    #[test]
    fn figure_one_frame() {
        let g = gamma_generators(s("5/17")).unwrap();
        for b in [g.b1, g.b2] {
            assert_eq!(b.apply(s("5/17")), s("5/17"));
            assert!(b.compose(&b).is_identity());
            assert!(!b.preserves_orientation());
        }
        assert_eq!(g.b1.apply(s("2/7")), s("2/7"));
        assert_eq!(g.b2.apply(s("3/10")), s("3/10"));
        assert_eq!(g.a2.apply(Slope::ZERO), s("2"));
        let path = edge_path(&cf_canonical(s("5/17")).unwrap());
        assert_eq!(path.vertices, vec![Slope::INFINITY, Slope::ZERO, s("1/3"), s("2/7"), s("5/17")]);
        assert!(path.is_unimodular());
    }

    #[test]
    fn frame_points_for_both_parities() {
        for (r, prev, prime) in [("5/17", "2/7", "3/10"), ("2/7", "1/3", "1/4"), ("5/3", "2", "3/2")] {
            let f = Frame::canonical(s(r)).unwrap();
            assert_eq!(f.r_prev(), s(prev), "{r}");
            assert_eq!(f.r_prime(), s(prime), "{r}");
        }
    }

    #[test]
    fn special_slopes_rejected() {
        assert!(matches!(gamma_generators(Slope::INFINITY), Err(Error::SpecialSlope { kind: "infinity", .. })));
        assert!(matches!(gamma_generators(s("3")), Err(Error::SpecialSlope { kind: "integer", .. })));
    }

    #[test]
    fn folding() {
        for (x, y) in [("5/17", "5/17"), ("7/3", "1/3"), ("-1/4", "1/4"), ("5/3", "1/3"), ("3", "1")] {
            let (g, t) = fold_inf(s(x));
            assert_eq!(t, s(y));
            assert_eq!(g.apply(s(x)), t);
            assert!(classify_gamma_inf(&g).is_some());
        }
    }

    #[test]
    fn classification_round_trip() {
        let f = Frame::canonical(s("2/5")).unwrap();
        for eta in [1, -1] {
            for c in -3..=3 {
                assert_eq!(classify_gamma_inf(&gamma_inf(eta, c)), Some((eta, c)));
                assert_eq!(f.classify_gamma_r(&f.gamma_r(eta, c)), Some((eta, c)));
            }
        }
        assert_eq!(f.classify_gamma_r(&f.b1().compose(&f.b2())), Some((1, 1)));
        assert_eq!(classify_gamma_inf(&MoebiusMap::negation().compose(&MoebiusMap::flip(2))), Some((1, 1)));
        assert_eq!(f.classify_gamma_r(&MoebiusMap::negation()), None);
    }
}
