use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::certificate::{normal_form, OrbitCertificate, Side, Target};
use super::frame::{dihedral, fold_inf, Frame};
use super::moebius::MoebiusMap;
use crate::error::{Error, Result};
use crate::rational_cf::Slope;

/// How a class was first reached: `rep = fold ∘ gen ∘ pre (parent)`,
/// where `pre` and `fold` lie in `Γ_∞`.
#[derive(Debug, Clone, Copy)]
struct Step {
    parent: Slope,
    pre: MoebiusMap,
    generator: MoebiusMap,
    fold: MoebiusMap,
}

/// Breadth-first closure of `{∞, r}` under `Γ̂_r`, one node per
/// `Γ_∞`-class.
///
/// Every class is named by its representative in `[0, 1] ∪ {∞}`. From a
/// class `[z]` the search applies each `Γ_r` generator to every member
/// `±z + 2k` whose image still has denominator at most `max_den`; the
/// admissible `k` form an interval since the image denominator is affine
/// in `k`.
#[derive(Debug, Clone)]
pub struct BfsOrbit {
    seeds: Vec<(Slope, Target)>,
    generators: Vec<MoebiusMap>,
    reached: BTreeMap<Slope, Option<Step>>,
    complete: bool,
}

fn representative(s: Slope) -> (MoebiusMap, Slope) {
    if s.is_infinite() {
        (MoebiusMap::IDENTITY, s)
    } else {
        fold_inf(s)
    }
}

/// Integers `k` with `|a k + b| <= bound`.
fn affine_window(a: i128, b: i128, bound: i128) -> Option<(i128, i128)> {
    if a == 0 {
        return (b.abs() <= bound).then_some((0, 0));
    }
    let (a, b) = if a < 0 { (-a, -b) } else { (a, b) };
    let lo = (-bound - b).div_euclid(a) + i128::from((-bound - b).rem_euclid(a) != 0);
    let hi = (bound - b).div_euclid(a);
    (lo <= hi).then_some((lo, hi))
}

impl BfsOrbit {
    pub fn run(r: Slope, max_word_len: usize, max_den: i128) -> BfsOrbit {
        let (seeds, generators) = if r.is_infinite() {
            (vec![(Slope::INFINITY, Target::Inf)], Vec::new())
        } else if r.is_integer() {
            let reflection = MoebiusMap::edge_reflection(r, r.add_int(1)).expect("integers are neighbours");
            (vec![(Slope::INFINITY, Target::Inf), (representative(r).1, Target::R)], vec![reflection])
        } else {
            let frame = Frame::canonical(r).expect("non-integral slope");
            (
                vec![(Slope::INFINITY, Target::Inf), (representative(r).1, Target::R)],
                vec![frame.b1(), frame.b2()],
            )
        };
        let mut reached: BTreeMap<Slope, Option<Step>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for &(seed, _) in &seeds {
            if seed.is_infinite() || seed.den() <= max_den {
                reached.entry(seed).or_insert(None);
                queue.push_back((seed, 0usize));
            }
        }
        let mut complete = true;
        while let Some((z, depth)) = queue.pop_front() {
            let mut fresh = Vec::new();
            for (pre, g) in Self::moves(z, &generators, max_den) {
                let image = g.compose(&pre).apply(z);
                let (fold, rep) = representative(image);
                if !reached.contains_key(&rep) && !fresh.iter().any(|(x, _): &(Slope, Step)| *x == rep) {
                    fresh.push((rep, Step { parent: z, pre, generator: g, fold }));
                }
            }
            if fresh.is_empty() {
                continue;
            }
            if depth >= max_word_len {
                complete = false;
                continue;
            }
            for (rep, step) in fresh {
                reached.insert(rep, Some(step));
                queue.push_back((rep, depth + 1));
            }
        }
        BfsOrbit { seeds, generators, reached, complete }
    }

    /// All `(pre, generator)` with `pre ∈ Γ_∞` such that
    /// `generator(pre(z))` has denominator at most `max_den`.
    fn moves(z: Slope, generators: &[MoebiusMap], max_den: i128) -> Vec<(MoebiusMap, MoebiusMap)> {
        let mut out = Vec::new();
        for g in generators {
            let [_, _, gc, gd] = g.entries();
            if z.is_infinite() {
                if gc.abs() <= max_den {
                    out.push((MoebiusMap::IDENTITY, *g));
                }
                continue;
            }
            for eta in [1i8, -1] {
                // g(ηz + 2k) has denominator |gc (η x + 2k y) + gd y|
                let (x, y) = (z.num(), z.den());
                let a = 2 * gc * y;
                let b = gc * i128::from(eta) * x + gd * y;
                if let Some((lo, hi)) = affine_window(a, b, max_den) {
                    for k in lo..=hi {
                        out.push((dihedral(eta, 2 * k), *g));
                    }
                }
            }
        }
        out
    }

    /// Class representatives reached, in increasing order.
    pub fn representatives(&self) -> BTreeSet<Slope> {
        self.reached.keys().copied().collect()
    }

    /// False when the word-length cap cut the search short.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn contains(&self, s: Slope) -> bool {
        self.reached.contains_key(&representative(s).1)
    }

    /// Rebuilds a certificate for `s` from the search tree.
    pub fn certificate(&self, s: Slope, frame: &Frame) -> Result<Option<OrbitCertificate>> {
        if self.generators.len() != 2 {
            return Err(Error::SpecialSlope { slope: frame.base(), kind: "integer or infinity" });
        }
        let (f0, mut rep) = representative(s);
        if !self.reached.contains_key(&rep) {
            return Ok(None);
        }
        // s = f0⁻¹ (fold_k gen_k pre_k) ⋯ (fold_1 gen_1 pre_1) (seed)
        let mut factors = vec![(Side::Inf, f0.inverse())];
        while let Some(Some(step)) = self.reached.get(&rep) {
            factors.push((Side::Inf, step.fold));
            factors.push((Side::R, step.generator));
            factors.push((Side::Inf, step.pre));
            rep = step.parent;
        }
        let target = self
            .seeds
            .iter()
            .find(|(seed, _)| *seed == rep)
            .map(|&(_, t)| t)
            .expect("search tree is rooted at a seed");
        let mut factors_for_target = factors;
        if target == Target::R {
            // the seed is the folded base; unfold it back to the frame's base
            let (f, _) = representative(frame.base());
            factors_for_target.push((Side::Inf, f));
        }
        let cert = normal_form(frame, factors_for_target, target)?;
        if cert.verify()? != s {
            return Err(Error::BadCertificate(format!("search tree does not reproduce {s}")));
        }
        Ok(Some(cert))
    }
}

/// The set of `Γ_∞`-class representatives (in `[0, 1] ∪ {∞}`) of the
/// points of `Γ̂_r · {∞, r}` reachable within the given bounds.
pub fn bfs_oracle(r: Slope, max_word_len: usize, max_den: i128) -> BTreeSet<Slope> {
    BfsOrbit::run(r, max_word_len, max_den).representatives()
}
