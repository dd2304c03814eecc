//! The face lattice of an arrangement of axis-parallel hyperplanes.
//!
//! A [`Lattice`] is a sorted list of breakpoints `0 = c_0 < … < c_K = 1`,
//! shared by every axis. Its positions run over `0..=2K`: position `2j`
//! is the value `c_j` and position `2j+1` is the open cell `(c_j, c_{j+1})`.
//! A face is a tuple of positions, one per axis. When every box endpoint
//! is a breakpoint, membership in a union of open boxes is constant on
//! each face, so a [`FaceTable`] decides it exactly.

use crate::geometry::Box;
use crate::rational::Rational;

pub type Position = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    coords: Vec<Rational>,
}

impl Lattice {
    /// Breakpoints are the given values clipped to `[0,1]`, plus `0` and `1`.
    pub fn new(values: impl IntoIterator<Item = Rational>) -> Self {
        let mut coords: Vec<Rational> = values.into_iter().filter(Rational::in_unit).collect();
        coords.push(Rational::zero());
        coords.push(Rational::one());
        coords.sort();
        coords.dedup();
        Lattice { coords }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Number of positions, `2K + 1`.
    pub fn len(&self) -> usize {
        2 * self.coords.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The position of the value `1`.
    pub fn last(&self) -> Position {
        self.len() - 1
    }

    pub fn is_cell(p: Position) -> bool {
        p % 2 == 1
    }

    /// Position holding `v`: the breakpoint itself or the cell around it.
    /// `None` outside `[0,1]`.
    pub fn position_of(&self, v: Rational) -> Option<Position> {
        if !v.in_unit() {
            return None;
        }
        Some(match self.coords.binary_search(&v) {
            Ok(j) => 2 * j,
            Err(j) => 2 * j - 1,
        })
    }

    /// Open cell `p` as `(c_j, c_{j+1})`; a breakpoint as `(c_j, c_j)`.
    pub fn bounds(&self, p: Position) -> (Rational, Rational) {
        let j = p / 2;
        if Self::is_cell(p) {
            (self.coords[j], self.coords[j + 1])
        } else {
            (self.coords[j], self.coords[j])
        }
    }

    /// A value inside position `p`: the breakpoint, or the cell midpoint.
    pub fn representative(&self, p: Position) -> Rational {
        let (lo, hi) = self.bounds(p);
        Rational::midpoint(lo, hi)
    }

    /// The `r`-th of `cap` evenly spaced interior values of position `p`
    /// (`r < cap`); a breakpoint position yields its value.
    pub fn value_at(&self, p: Position, r: usize, cap: usize) -> Rational {
        let (lo, hi) = self.bounds(p);
        if Self::is_cell(p) {
            Rational::lerp_step(lo, hi, r as i128 + 1, cap as i128 + 1)
        } else {
            lo
        }
    }

    fn first_position(&self, pred: impl Fn(Rational) -> bool) -> Position {
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if pred(self.representative(mid)) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    }

    fn range_where(
        &self,
        above: impl Fn(Rational) -> bool,
        beyond: impl Fn(Rational) -> bool,
    ) -> Option<(Position, Position)> {
        let first = self.first_position(above);
        let end = self.first_position(beyond);
        (first < end).then(|| (first, end - 1))
    }

    /// Inclusive range of positions lying inside the open interval `(lo,hi)`.
    /// Exact when `lo` and `hi` are breakpoints or lie outside `[0,1]`.
    pub fn open_range(&self, lo: Rational, hi: Rational) -> Option<(Position, Position)> {
        self.range_where(|v| v > lo, |v| v >= hi)
    }

    /// Inclusive range of positions lying inside the closed interval `[lo,hi]`.
    pub fn closed_range(&self, lo: Rational, hi: Rational) -> Option<(Position, Position)> {
        self.range_where(|v| v >= lo, |v| v > hi)
    }

    /// Per-axis open ranges of a box, `None` when it misses the unit cube.
    pub fn open_box_ranges(&self, b: &Box) -> Option<Vec<(Position, Position)>> {
        b.intervals().iter().map(|&(lo, hi)| self.open_range(lo, hi)).collect()
    }

    pub fn closed_box_ranges(&self, b: &Box) -> Option<Vec<(Position, Position)>> {
        b.intervals().iter().map(|&(lo, hi)| self.closed_range(lo, hi)).collect()
    }

    /// Concrete values for a non-decreasing position sequence. Entries that
    /// share a cell become distinct increasing values; `cap` bounds the size
    /// of any such group and fixes the spacing.
    pub fn realize(&self, seq: &[Position], cap: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(seq.len());
        let mut rank = 0usize;
        for (i, &p) in seq.iter().enumerate() {
            debug_assert!(i == 0 || seq[i - 1] <= p);
            if i > 0 && seq[i - 1] == p && Self::is_cell(p) {
                rank += 1;
            } else {
                rank = 0;
            }
            out.push(self.value_at(p, rank, cap.max(rank + 1)));
        }
        out
    }
}

/// Calls `f` on every tuple of the product of inclusive ranges.
pub(crate) fn for_each_in_product(ranges: &[(Position, Position)], mut f: impl FnMut(&[Position])) {
    if ranges.iter().any(|&(lo, hi)| lo > hi) {
        return;
    }
    let mut cur: Vec<Position> = ranges.iter().map(|r| r.0).collect();
    loop {
        f(&cur);
        let mut axis = ranges.len();
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            if cur[axis] < ranges[axis].1 {
                cur[axis] += 1;
                for (later, r) in cur.iter_mut().zip(ranges).skip(axis + 1) {
                    *later = r.0;
                }
                break;
            }
        }
    }
}

/// Coverage of every face by a family of position boxes, with prefix sums
/// over uncovered faces for constant-time range queries.
#[derive(Clone, Debug)]
pub struct FaceTable {
    lattice: Lattice,
    dim: usize,
    side: usize,
    covered: Vec<bool>,
    prefix: Vec<u32>,
}

impl FaceTable {
    /// Faces covered by the open boxes.
    pub fn open_cover(lattice: Lattice, dim: usize, boxes: &[Box]) -> Self {
        let ranges: Vec<_> = boxes.iter().filter_map(|b| lattice.open_box_ranges(b)).collect();
        Self::from_ranges(lattice, dim, &ranges)
    }

    /// Faces covered by the closures of the boxes.
    pub fn closed_cover(lattice: Lattice, dim: usize, boxes: &[Box]) -> Self {
        let ranges: Vec<_> = boxes.iter().filter_map(|b| lattice.closed_box_ranges(b)).collect();
        Self::from_ranges(lattice, dim, &ranges)
    }

    pub fn from_ranges(lattice: Lattice, dim: usize, ranges: &[Vec<(Position, Position)>]) -> Self {
        let side = lattice.len();
        let total = side.pow(dim as u32);
        let mut covered = vec![false; total];
        for r in ranges {
            for_each_in_product(r, |face| {
                covered[flat_index(face, side)] = true;
            });
        }
        let prefix = prefix_sums(&covered, dim, side);
        FaceTable {
            lattice,
            dim,
            side,
            covered,
            prefix,
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_covered(&self, face: &[Position]) -> bool {
        self.covered[flat_index(face, self.side)]
    }

    /// Number of uncovered faces in the product of inclusive ranges.
    pub fn uncovered_in(&self, ranges: &[(Position, Position)]) -> u32 {
        debug_assert_eq!(ranges.len(), self.dim);
        if ranges.iter().any(|&(lo, hi)| lo > hi) {
            return 0;
        }
        let stride = self.side + 1;
        let mut total: i64 = 0;
        for corner in 0..(1usize << self.dim) {
            let mut idx = 0usize;
            let mut sign = 1i64;
            for (axis, &(lo, hi)) in ranges.iter().enumerate() {
                let c = if corner >> axis & 1 == 1 {
                    sign = -sign;
                    lo
                } else {
                    hi + 1
                };
                idx = idx * stride + c;
            }
            total += sign * self.prefix[idx] as i64;
        }
        total as u32
    }

    pub fn range_covered(&self, ranges: &[(Position, Position)]) -> bool {
        self.uncovered_in(ranges) == 0
    }
}

fn flat_index(face: &[Position], side: usize) -> usize {
    face.iter().fold(0, |acc, &p| acc * side + p)
}

fn prefix_sums(covered: &[bool], dim: usize, side: usize) -> Vec<u32> {
    let stride = side + 1;
    let mut prefix = vec![0u32; stride.pow(dim as u32)];
    let full: Vec<(Position, Position)> = vec![(0, side - 1); dim];
    for_each_in_product(&full, |face| {
        let shifted = face.iter().fold(0, |acc, &p| acc * stride + p + 1);
        prefix[shifted] = u32::from(!covered[flat_index(face, side)]);
    });
    for axis in 0..dim {
        let step = stride.pow((dim - 1 - axis) as u32);
        for idx in 0..prefix.len() {
            if (idx / step) % stride > 0 {
                prefix[idx] += prefix[idx - step];
            }
        }
    }
    prefix
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn positions_and_ranges() {
        let l = Lattice::new([q(1, 2), q(1, 4), q(3, 2)]);
        assert_eq!(l.coords(), &[q(0, 1), q(1, 4), q(1, 2), q(1, 1)]);
        assert_eq!(l.len(), 7);
        assert_eq!(l.position_of(q(1, 4)), Some(2));
        assert_eq!(l.position_of(q(1, 3)), Some(3));
        assert_eq!(l.open_range(q(1, 4), q(1, 1)), Some((3, 5)));
        assert_eq!(l.closed_range(q(1, 4), q(1, 1)), Some((2, 6)));
        assert_eq!(l.open_range(q(-1, 1), q(2, 1)), Some((0, 6)));
        assert_eq!(l.open_range(q(1, 4), q(1, 2)), Some((3, 3)));
    }

    #[test]
    fn realize_spreads_shared_cells() {
        let l = Lattice::new([q(1, 2)]);
        let v = l.realize(&[1, 1, 2, 3], 2);
        assert_eq!(v, vec![q(1, 6), q(1, 3), q(1, 2), q(2, 3)]);
    }

    #[test]
    fn prefix_queries_match_direct_count() {
        let l = Lattice::new([q(1, 3), q(2, 3)]);
        let b = Box::new(vec![(q(0, 1), q(2, 3)), (q(1, 3), q(1, 1))]).unwrap();
        let t = FaceTable::open_cover(l.clone(), 2, &[b]);
        let ranges = [(1, 5), (0, 4)];
        let mut direct = 0;
        for_each_in_product(&ranges, |f| direct += u32::from(!t.is_covered(f)));
        assert_eq!(t.uncovered_in(&ranges), direct);
        assert!(t.range_covered(&[(1, 3), (3, 5)]));
        assert!(!t.range_covered(&[(1, 4), (3, 5)]));
    }
}
