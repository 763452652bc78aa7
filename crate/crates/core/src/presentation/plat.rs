//! The plat closure of a 4-braid as a link diagram.
//!
//! Strands sit at positions 1..=4, the braid is read top to bottom, and
//! caps join positions 1-2 and 3-4 above and below. `σ_i^{+1}` crosses
//! the strand at position `i` over the one at `i + 1`. The diagram gives
//! an independent route to the determinant and Alexander polynomial of
//! `K(s)`, used to check braids against the presentation side.

use serde::Serialize;

use super::braid::BraidWord;
use crate::invariants::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub sign: i8,
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlatDiagram {
    pub crossings: Vec<Crossing>,
    pub arcs: usize,
    pub components: usize,
    #[serde(skip)]
    raw: Vec<RawCrossing>,
    /// `+1` travelling down, `-1` travelling up.
    #[serde(skip)]
    dir: Vec<i8>,
    #[serde(skip)]
    component: Vec<usize>,
    #[serde(skip)]
    arc_of: Vec<usize>,
}

#[derive(Clone, Copy)]
enum End {
    Cap(usize),
    /// Crossing index and the edge the strand continues on.
    Through(usize),
}

struct Edge {
    up: End,
    down: End,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct RawCrossing {
    in_l: usize,
    in_r: usize,
    out_l: usize,
    out_r: usize,
    /// The strand from `in_l` to `out_r` is on top.
    left_over: bool,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

impl PlatDiagram {
    pub fn from_braid(braid: &BraidWord) -> PlatDiagram {
        let mut edges: Vec<Edge> = (0..4).map(|_| Edge { up: End::Cap(0), down: End::Cap(0) }).collect();
        for (a, b) in [(0, 1), (2, 3)] {
            edges[a].up = End::Cap(b);
            edges[b].up = End::Cap(a);
        }
        let mut cur = [0usize, 1, 2, 3];
        let mut raw = Vec::new();
        for (i, e) in braid.crossing_sequence() {
            let (l, r) = (usize::from(i) - 1, usize::from(i));
            let (in_l, in_r) = (cur[l], cur[r]);
            let (out_l, out_r) = (edges.len(), edges.len() + 1);
            edges.push(Edge { up: End::Through(in_r), down: End::Cap(0) });
            edges.push(Edge { up: End::Through(in_l), down: End::Cap(0) });
            edges[in_l].down = End::Through(out_r);
            edges[in_r].down = End::Through(out_l);
            raw.push(RawCrossing { in_l, in_r, out_l, out_r, left_over: e > 0 });
            cur[l] = out_l;
            cur[r] = out_r;
        }
        for (a, b) in [(0, 1), (2, 3)] {
            edges[cur[a]].down = End::Cap(cur[b]);
            edges[cur[b]].down = End::Cap(cur[a]);
        }

        let mut dir = vec![0i8; edges.len()];
        let mut component = vec![0usize; edges.len()];
        let mut components = 0;
        // the top caps are travelled in opposite senses (1 -> 2 and 4 -> 3),
        // matching the orientation of the meridians a, b
        for start in [1, 2] {
            if dir[start] != 0 {
                continue;
            }
            let (mut e, mut d) = (start, 1i8);
            while dir[e] == 0 {
                dir[e] = d;
                component[e] = components;
                let end = if d > 0 { edges[e].down } else { edges[e].up };
                (e, d) = match end {
                    End::Cap(f) => (f, -d),
                    End::Through(f) => (f, d),
                };
            }
            components += 1;
        }

        let mut dsu = Dsu((0..edges.len()).collect());
        for (a, b) in [(0, 1), (2, 3), (cur[0], cur[1]), (cur[2], cur[3])] {
            dsu.union(a, b);
        }
        for c in &raw {
            if c.left_over {
                dsu.union(c.in_l, c.out_r);
            } else {
                dsu.union(c.in_r, c.out_l);
            }
        }
        let mut ids = std::collections::BTreeMap::new();
        let arc_of: Vec<usize> = (0..edges.len())
            .map(|e| {
                let root = dsu.find(e);
                let next = ids.len();
                *ids.entry(root).or_insert(next)
            })
            .collect();
        let mut d = PlatDiagram { crossings: Vec::new(), arcs: ids.len(), components, raw, dir, component, arc_of };
        d.crossings = d.oriented_crossings();
        d
    }

    fn oriented_crossings(&self) -> Vec<Crossing> {
        let dir = &self.dir;
        self.raw
            .iter()
            .map(|c| {
                // travelling down, l -> r moves right and r -> l moves left
                let lr = (i64::from(dir[c.in_l]), -i64::from(dir[c.in_l]));
                let rl = (-i64::from(dir[c.in_r]), -i64::from(dir[c.in_r]));
                let (over_edge, over, under, (u_in, u_out)) = if c.left_over {
                    (c.in_l, lr, rl, if dir[c.in_r] > 0 { (c.in_r, c.out_l) } else { (c.out_l, c.in_r) })
                } else {
                    (c.in_r, rl, lr, if dir[c.in_l] > 0 { (c.in_l, c.out_r) } else { (c.out_r, c.in_l) })
                };
                let cross = over.0 * under.1 - over.1 * under.0;
                Crossing {
                    sign: if cross > 0 { 1 } else { -1 },
                    over: self.arc_of[over_edge],
                    under_in: self.arc_of[u_in],
                    under_out: self.arc_of[u_out],
                }
            })
            .collect()
    }

    /// The same diagram with component `k` travelled the other way.
    pub fn reversed(&self, k: usize) -> PlatDiagram {
        let mut d = self.clone();
        for (e, dir) in d.dir.iter_mut().enumerate() {
            if self.component[e] == k {
                *dir = -*dir;
            }
        }
        d.crossings = d.oriented_crossings();
        d
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| i64::from(c.sign)).sum()
    }

    /// The Alexander matrix of the Wirtinger presentation, one row per
    /// crossing and one column per arc.
    pub fn alexander_matrix(&self) -> Vec<Vec<LaurentPoly>> {
        let t = LaurentPoly::monomial(1, 1);
        let one = LaurentPoly::one();
        let mut rows = Vec::with_capacity(self.crossings.len());
        for c in &self.crossings {
            let mut row = vec![LaurentPoly::zero(); self.arcs];
            let (over, u_in, u_out) = if c.sign > 0 {
                (&one - &t, t.clone(), -&one)
            } else {
                (&t - &one, one.clone(), -&t)
            };
            row[c.over] = &row[c.over] + &over;
            row[c.under_in] = &row[c.under_in] + &u_in;
            row[c.under_out] = &row[c.under_out] + &u_out;
            rows.push(row);
        }
        rows
    }

    /// A first minor of the Alexander matrix, normalized.
    pub fn alexander(&self) -> LaurentPoly {
        let n = self.crossings.len();
        if n == 0 || self.arcs > n {
            return if n == 0 && self.arcs == 1 { LaurentPoly::one() } else { LaurentPoly::zero() };
        }
        let minor: Vec<Vec<LaurentPoly>> =
            self.alexander_matrix().into_iter().take(n - 1).map(|row| row[..n - 1].to_vec()).collect();
        bareiss(minor).normalized()
    }

    /// `|Δ(-1)|`.
    pub fn determinant(&self) -> i128 {
        self.alexander().eval_int(-1).expect("small determinant").abs()
    }
}

/// Fraction-free determinant over `Z[t, t⁻¹]`.
fn bareiss(mut m: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut prev = LaurentPoly::one();
    let mut sign = 1;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return LaurentPoly::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = LaurentPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -&det
    } else {
        det
    }
}
