//! Brute-force rank, kept apart from the lattice engine: containment is
//! decided by subtracting open boxes from the query region, and candidate
//! values are the breakpoints of `S` plus evenly spaced points inside each
//! open cell between consecutive breakpoints.
//!
//! Coverage of an open box by a union of open boxes is constant as one of
//! its endpoints moves inside an open cell, so an open interval with an
//! endpoint in a cell is checked with that endpoint pushed to the cell's
//! boundary.

use crate::geometry::{Box, BoxUnionSet, Point};
use crate::rational::Rational;

/// `(lo, hi, lo_closed, hi_closed)`.
type Interval = (Rational, Rational, bool, bool);

fn nonempty(iv: &Interval) -> bool {
    iv.0 < iv.1 || (iv.0 == iv.1 && iv.2 && iv.3)
}

/// Whether the open box with the given sides lies in the union of `boxes`.
pub(crate) fn open_box_covered(sides: &[(Rational, Rational)], boxes: &[Box]) -> bool {
    let start: Vec<Interval> = sides.iter().map(|&(a, b)| (a, b, false, false)).collect();
    if !start.iter().all(nonempty) {
        return true;
    }
    let mut pieces = vec![start];
    for u in boxes {
        let mut next = Vec::new();
        for piece in pieces {
            let meets = piece
                .iter()
                .zip(u.intervals())
                .all(|(iv, &(a, b))| iv.0 < b && a < iv.1);
            if !meets {
                next.push(piece);
                continue;
            }
            let mut core = piece;
            for (axis, &(a, b)) in u.intervals().iter().enumerate() {
                let iv = core[axis];
                let below = (iv.0, a, iv.2, true);
                if nonempty(&below) {
                    let mut p = core.clone();
                    p[axis] = below;
                    next.push(p);
                }
                let above = (b, iv.1, true, iv.3);
                if nonempty(&above) {
                    let mut p = core.clone();
                    p[axis] = above;
                    next.push(p);
                }
                let (lo, lo_c) = if a >= iv.0 { (a, false) } else { (iv.0, iv.2) };
                let (hi, hi_c) = if b <= iv.1 { (b, false) } else { (iv.1, iv.3) };
                core[axis] = (lo, hi, lo_c, hi_c);
            }
        }
        if next.is_empty() {
            return true;
        }
        pieces = next;
    }
    false
}

/// Sorted breakpoints of `S` in `[0,1]`, with 0 and 1.
fn breakpoints(s: &BoxUnionSet) -> Vec<Rational> {
    let mut c = vec![Rational::zero(), Rational::one()];
    for b in s.boxes() {
        for &(lo, hi) in b.intervals() {
            c.extend([lo, hi].into_iter().filter(|v| v.in_unit()));
        }
    }
    c.sort();
    c.dedup();
    c
}

/// Position `p` is breakpoint `p/2` when even and the open cell after it
/// when odd.
fn strictly_after(prev: usize, p: usize) -> bool {
    p > prev || (p == prev && p % 2 == 1)
}

fn planar(s: &BoxUnionSet, cap: usize) -> usize {
    let c = breakpoints(s);
    let last = 2 * (c.len() - 1);
    let n = last + 1;
    let side = |u: usize, w: usize| (c[u / 2], c[(w + 1) / 2]);
    let mut best = 0;
    for x0 in 0..=last {
        for ye in x0..=last {
            if !strictly_after(x0, ye) {
                continue;
            }
            // ok[x][y]: the rectangle (x0,x) × (y,ye) lies in S.
            let mut ok = vec![vec![false; n]; n];
            for x in x0..=last {
                if !strictly_after(x0, x) {
                    continue;
                }
                for y in x..=last {
                    if strictly_after(y, ye) {
                        ok[x][y] = open_box_covered(&[side(x0, x), side(y, ye)], s.boxes());
                    }
                }
            }
            // reach[y]: some staircase with k steps ends at y.
            let mut reach: Vec<bool> = (0..n).map(|y| (0..=y).any(|x| ok[x][y])).collect();
            let mut k = 1;
            while reach.iter().any(|&r| r) {
                best = best.max(k);
                if best >= cap {
                    return cap;
                }
                let first = reach.iter().position(|&r| r).expect("nonempty");
                reach = (0..n)
                    .map(|y| (0..=y).any(|x| ok[x][y] && strictly_after(first, x)))
                    .collect();
                k += 1;
            }
        }
    }
    best
}

/// Chain slots `(axis, level)` of a three-dimensional witness of order `m`
/// with the strictness of the step into each.
fn spatial_chain(m: usize) -> Vec<((usize, usize), bool)> {
    let mut v = vec![((0, 0), false)];
    for i in 1..=m {
        v.push(((0, i), true));
        v.push(((1, i), false));
        v.push(((2, i), false));
    }
    v.push(((2, m + 1), true));
    v
}

struct SpatialSearch<'a> {
    s: &'a BoxUnionSet,
    c: Vec<Rational>,
    /// Slots that appear in some box, in chain order, with strictness.
    used: Vec<((usize, usize), bool)>,
    /// Box sides as pairs of indices into `used`, and the index completing it.
    boxes: Vec<([(usize, usize); 3], usize)>,
    pos: Vec<(usize, usize)>,
    values: Vec<Rational>,
    spread: i128,
}

impl SpatialSearch<'_> {
    fn value(&self, p: usize, r: usize) -> Rational {
        if p % 2 == 0 {
            self.c[p / 2]
        } else {
            Rational::lerp_step(self.c[p / 2], self.c[p / 2 + 1], r as i128 + 1, self.spread)
        }
    }

    fn box_of(&self, sides: &[(usize, usize); 3]) -> Vec<(Rational, Rational)> {
        sides.iter().map(|&(i, j)| (self.values[i], self.values[j])).collect()
    }

    fn dfs(&mut self) -> bool {
        let k = self.pos.len();
        if k == self.used.len() {
            let closed: Vec<Box> = self
                .boxes
                .iter()
                .filter_map(|(sides, _)| Box::new(self.box_of(sides)).ok())
                .collect();
            return closed.len() == self.boxes.len() && interior_inside(self.s, &closed);
        }
        let strict = self.used[k].1;
        let last = 2 * (self.c.len() - 1);
        let (p0, r0) = if k == 0 { (0, 0) } else { self.pos[k - 1] };
        for p in p0..=last {
            let mut options = Vec::new();
            if k == 0 || p > p0 {
                options.push(0);
            } else if p % 2 == 1 {
                if !strict {
                    options.push(r0);
                }
                options.push(r0 + 1);
            } else if !strict {
                options.push(0);
            }
            for r in options {
                self.pos.push((p, r));
                self.values.push(self.value(p, r));
                let fine = self.boxes.iter().filter(|(_, done)| *done == k).all(|(sides, _)| {
                    let sides: Vec<(Rational, Rational)> =
                        sides.iter().map(|&(i, j)| (cell_floor(&self.c, self.pos[i].0), cell_ceil(&self.c, self.pos[j].0))).collect();
                    open_box_covered(&sides, self.s.boxes())
                });
                if fine && self.dfs() {
                    return true;
                }
                self.pos.pop();
                self.values.pop();
            }
        }
        false
    }
}

fn cell_floor(c: &[Rational], p: usize) -> Rational {
    c[p / 2]
}

fn cell_ceil(c: &[Rational], p: usize) -> Rational {
    c[(p + 1) / 2]
}

fn spatial_at_least(s: &BoxUnionSet, m: usize) -> bool {
    let chain = spatial_chain(m);
    let triples = super::RankWitness3D::box_indices(m);
    let mut needed = vec![false; chain.len()];
    let index_of = |axis: usize, level: usize| chain.iter().position(|(slot, _)| *slot == (axis, level)).expect("slot");
    for &[i1, i2, i3] in &triples {
        for (axis, level) in [(0, i1), (0, i1 + 1), (1, i2), (1, i2 + 1), (2, i3), (2, i3 + 1)] {
            needed[index_of(axis, level)] = true;
        }
    }
    let mut used = Vec::new();
    let mut remap = vec![usize::MAX; chain.len()];
    let mut pending_strict = false;
    for (i, &(slot, strict)) in chain.iter().enumerate() {
        pending_strict |= strict;
        if needed[i] {
            remap[i] = used.len();
            used.push((slot, pending_strict && !used.is_empty()));
            pending_strict = false;
        }
    }
    let boxes = triples
        .iter()
        .map(|&[i1, i2, i3]| {
            let sides = [
                (remap[index_of(0, i1)], remap[index_of(0, i1 + 1)]),
                (remap[index_of(1, i2)], remap[index_of(1, i2 + 1)]),
                (remap[index_of(2, i3)], remap[index_of(2, i3 + 1)]),
            ];
            let done = sides.iter().map(|&(_, j)| j).max().expect("three sides");
            (sides, done)
        })
        .collect();
    let spread = used.len() as i128 + 1;
    let mut search = SpatialSearch {
        s,
        c: breakpoints(s),
        used,
        boxes,
        pos: Vec::new(),
        values: Vec::new(),
        spread,
    };
    search.dfs()
}

/// `int(⋃ closed) ∩ Δ³ ⊆ S`, checked on one point of every face of the
/// arrangement of all box sides. A point is interior when the eight corners
/// of a cube around it, smaller than every gap, lie in the closed union.
fn interior_inside(s: &BoxUnionSet, closed: &[Box]) -> bool {
    let dim = s.dim();
    let mut coords: Vec<Vec<Rational>> = vec![vec![Rational::zero(), Rational::one()]; dim];
    for b in closed.iter().chain(s.boxes()) {
        for (axis, &(lo, hi)) in b.intervals().iter().enumerate() {
            coords[axis].extend([lo, hi]);
        }
    }
    let mut gap: Option<Rational> = None;
    let reps: Vec<Vec<Rational>> = coords
        .iter_mut()
        .map(|c| {
            c.sort();
            c.dedup();
            let mut r = vec![c[0]];
            for w in c.windows(2) {
                let d = w[1] - w[0];
                gap = Some(gap.map_or(d, |g| g.min(d)));
                r.push(Rational::midpoint(w[0], w[1]));
                r.push(w[1]);
            }
            r
        })
        .collect();
    let delta = gap.unwrap_or(Rational::one()) / Rational::from_integer(4);
    let corners: Vec<Vec<Rational>> = (0..1usize << dim)
        .map(|mask| (0..dim).map(|a| if mask >> a & 1 == 1 { delta } else { -delta }).collect())
        .collect();
    for b in closed {
        let axes: Vec<Vec<Rational>> = (0..dim)
            .map(|a| reps[a].iter().copied().filter(|&v| b.lo(a) <= v && v <= b.hi(a)).collect())
            .collect();
        let mut idx = vec![0usize; dim];
        'points: loop {
            let p: Vec<Rational> = (0..dim).map(|a| axes[a][idx[a]]).collect();
            let point = Point::new(p.clone());
            if point.in_simplex() && !s.boxes().iter().any(|u| u.contains_point(&point)) {
                let interior = corners.iter().all(|off| {
                    let q = Point::new(p.iter().zip(off).map(|(&v, &o)| v + o).collect());
                    closed.iter().any(|u| u.closure_contains_point(&q))
                });
                if interior {
                    return false;
                }
            }
            for a in 0..dim {
                idx[a] += 1;
                if idx[a] < axes[a].len() {
                    continue 'points;
                }
                idx[a] = 0;
            }
            break;
        }
    }
    true
}

/// Exhaustive rank of a small set, truncated at `cap`.
pub fn brute_force_rank(s: &BoxUnionSet, cap: usize) -> usize {
    match s.dim() {
        2 => planar(s, cap),
        3 => (1..=cap).filter(|&m| spatial_at_least(s, m)).max().unwrap_or(0),
        _ => 0,
    }
}
