//! Exact containment, interior and complement predicates for box unions.

use super::lattice::{for_each_in_product, FaceTable, Lattice, Position};
use super::{Box, BoxUnionSet, EssentialSimplex, Point};
use crate::rational::Rational;

/// Per axis, the sorted distinct box endpoints inside `[0,1]`, plus `0` and `1`.
pub fn arrangement_coords(s: &BoxUnionSet) -> Vec<Vec<Rational>> {
    (0..s.dim())
        .map(|axis| {
            let mut v: Vec<Rational> = s
                .boxes()
                .iter()
                .flat_map(|b| [b.lo(axis), b.hi(axis)])
                .filter(Rational::in_unit)
                .chain([Rational::zero(), Rational::one()])
                .collect();
            v.sort();
            v.dedup();
            v
        })
        .collect()
}

/// Face coverage of a box union on a lattice refined by extra breakpoints.
/// Build once per set and query many boxes against it.
#[derive(Clone, Debug)]
pub struct SetIndex {
    table: FaceTable,
}

impl SetIndex {
    pub fn new(s: &BoxUnionSet, extra: impl IntoIterator<Item = Rational>) -> Self {
        let lattice = Lattice::new(s.endpoints().into_iter().chain(extra));
        SetIndex {
            table: FaceTable::open_cover(lattice, s.dim(), s.boxes()),
        }
    }

    pub fn lattice(&self) -> &Lattice {
        self.table.lattice()
    }

    pub fn table(&self) -> &FaceTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn is_covered(&self, face: &[Position]) -> bool {
        self.table.is_covered(face)
    }

    /// `B ∩ [0,1]ⁿ ⊆ ∪ boxes`. Endpoints of `B` inside `[0,1]` must be breakpoints.
    pub fn contains_open_box(&self, b: &Box) -> bool {
        match self.lattice().open_box_ranges(b) {
            Some(r) => self.table.range_covered(&r),
            None => true,
        }
    }

    /// Lexicographically least face inside the position ranges that is
    /// uncovered and whose points can have strictly increasing coordinates.
    pub fn uncovered_increasing_face(&self, ranges: &[(Position, Position)]) -> Option<Vec<Position>> {
        let mut face = Vec::with_capacity(ranges.len());
        self.dfs_face(ranges, &mut face).then_some(face)
    }

    fn dfs_face(&self, ranges: &[(Position, Position)], face: &mut Vec<Position>) -> bool {
        let axis = face.len();
        if axis == ranges.len() {
            return !self.table.is_covered(face);
        }
        let (lo, hi) = ranges[axis];
        let start = match face.last() {
            Some(&p) if Lattice::is_cell(p) => lo.max(p),
            Some(&p) => lo.max(p + 1),
            None => lo,
        };
        for p in start..=hi {
            face.push(p);
            if self.dfs_face(ranges, face) {
                return true;
            }
            face.pop();
        }
        false
    }
}

/// True iff the open box `B` lies in `∪ boxes of S` (within the unit cube).
pub fn contains_box(s: &BoxUnionSet, b: &Box) -> bool {
    if b.dim() != s.dim() {
        return false;
    }
    let extra: Vec<Rational> = b.intervals().iter().flat_map(|&(lo, hi)| [lo, hi]).collect();
    SetIndex::new(s, extra).contains_open_box(b)
}

/// True iff the interior of the union of the closed boxes, intersected with
/// `Δⁿ`, lies in `A = (∪ boxes of A) ∩ Δⁿ`.
///
/// A face is interior to the union when every open cell adjacent to it lies
/// in one of the closed boxes; faces on the boundary of `[0,1]ⁿ` never are.
/// Each interior face that meets `Δⁿ` (non-decreasing positions) must be
/// covered by an open box of `A`.
pub fn interior_union_contains(a: &BoxUnionSet, closed_boxes: &[Box]) -> bool {
    if closed_boxes.iter().any(|b| b.dim() != a.dim()) {
        return false;
    }
    let dim = a.dim();
    let lattice = Lattice::new(
        a.endpoints()
            .into_iter()
            .chain(closed_boxes.iter().flat_map(|b| b.intervals().iter().flat_map(|&(lo, hi)| [lo, hi]))),
    );
    let open = FaceTable::open_cover(lattice.clone(), dim, a.boxes());
    let closed = FaceTable::closed_cover(lattice.clone(), dim, closed_boxes);
    let last = lattice.last();
    let mut ok = true;
    for b in closed_boxes {
        let Some(ranges) = lattice.closed_box_ranges(b) else {
            continue;
        };
        for_each_in_product(&ranges, |face| {
            if !ok || open.is_covered(face) || !face_meets_simplex(face) {
                return;
            }
            if is_interior(face, last, &closed) {
                ok = false;
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

fn face_meets_simplex(face: &[Position]) -> bool {
    face.windows(2).all(|w| w[0] <= w[1])
}

fn is_interior(face: &[Position], last: Position, closed: &FaceTable) -> bool {
    let mut around = Vec::with_capacity(face.len());
    for &p in face {
        if Lattice::is_cell(p) {
            around.push((p, p));
        } else if p == 0 || p == last {
            return false;
        } else {
            around.push((p - 1, p + 1));
        }
    }
    let mut all = true;
    for_each_in_product(&around, |cell| {
        if all && cell.iter().all(|&p| Lattice::is_cell(p)) && !closed.is_covered(cell) {
            all = false;
        }
    });
    all
}

/// A point of `(Δⁿ ∖ S) ∩ B` with strictly increasing coordinates, the
/// lexicographically least one on the face lattice, or `None` if none exists.
pub fn find_complement_point(s: &BoxUnionSet, b: &Box) -> Option<Point> {
    if b.dim() != s.dim() {
        return None;
    }
    let extra: Vec<Rational> = b.intervals().iter().flat_map(|&(lo, hi)| [lo, hi]).collect();
    let index = SetIndex::new(s, extra);
    let ranges = index.lattice().open_box_ranges(b)?;
    let face = index.uncovered_increasing_face(&ranges)?;
    Some(Point::new(index.lattice().realize(&face, s.dim())))
}

/// Sample points of `(Δⁿ ∖ S) ∩ D` with strictly increasing coordinates.
///
/// Per axis the candidate values are the breakpoints inside `(a,b)` together
/// with `q·n` evenly spaced interior values of every open cell, so that a
/// cell on the diagonal still carries increasing tuples; the output is
/// every strictly increasing tuple of candidates that avoids `S`, in
/// lexicographic order.
pub fn sample_complement(s: &BoxUnionSet, d: &EssentialSimplex, q: usize) -> Vec<Point> {
    let lattice = Lattice::new(s.endpoints().into_iter().chain([d.a, d.b]));
    let Some((lo, hi)) = lattice.open_range(d.a, d.b) else {
        return Vec::new();
    };
    let per_cell = q * d.dim;
    let mut values = Vec::new();
    for p in lo..=hi {
        if Lattice::is_cell(p) {
            values.extend((0..per_cell).map(|r| lattice.value_at(p, r, per_cell)));
        } else {
            values.push(lattice.value_at(p, 0, 1));
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d.dim);
    combinations(&values, d.dim, 0, &mut cur, &mut |c| {
        let p = Point::new(c.to_vec());
        if !s.covers(&p) {
            out.push(p);
        }
    });
    out
}

fn combinations(
    values: &[Rational],
    k: usize,
    from: usize,
    cur: &mut Vec<Rational>,
    f: &mut impl FnMut(&[Rational]),
) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in from..values.len() {
        if values.len() - i < k - cur.len() {
            break;
        }
        cur.push(values[i]);
        combinations(values, k, i + 1, cur, f);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::in_essential_simplex;
    use crate::rational::q;

    fn bx(iv: &[(Rational, Rational)]) -> Box {
        Box::new(iv.to_vec()).unwrap()
    }

    fn set(dim: usize, boxes: Vec<Box>) -> BoxUnionSet {
        BoxUnionSet::new(dim, boxes).unwrap()
    }

    #[test]
    fn arrangement_examples() {
        let s = set(2, vec![bx(&[(q(0, 1), q(1, 2)), (q(1, 2), q(1, 1))])]);
        let c = arrangement_coords(&s);
        assert_eq!(c[0], vec![q(0, 1), q(1, 2), q(1, 1)]);
        assert_eq!(c[1], vec![q(0, 1), q(1, 2), q(1, 1)]);
        assert_eq!(arrangement_coords(&BoxUnionSet::empty(2))[0], vec![q(0, 1), q(1, 1)]);
        let s = set(
            2,
            vec![
                bx(&[(q(1, 4), q(1, 2)), (q(1, 2), q(3, 4))]),
                bx(&[(q(1, 8), q(1, 2)), (q(3, 4), q(1, 1))]),
            ],
        );
        assert_eq!(arrangement_coords(&s)[0], vec![q(0, 1), q(1, 8), q(1, 4), q(1, 2), q(1, 1)]);
    }

    #[test]
    fn contains_box_examples() {
        let s = set(2, vec![bx(&[(q(0, 1), q(1, 1)), (q(0, 1), q(1, 1))])]);
        assert!(contains_box(&s, &bx(&[(q(1, 4), q(1, 2)), (q(1, 4), q(1, 2))])));
        let s = set(
            2,
            vec![
                bx(&[(q(0, 1), q(1, 2)), (q(0, 1), q(1, 1))]),
                bx(&[(q(1, 2), q(1, 1)), (q(0, 1), q(1, 1))]),
            ],
        );
        assert!(!contains_box(&s, &bx(&[(q(1, 4), q(3, 4)), (q(1, 4), q(1, 2))])));
        assert!(!contains_box(&BoxUnionSet::empty(2), &bx(&[(q(1, 4), q(3, 4)), (q(1, 4), q(1, 2))])));
    }

    #[test]
    fn interior_union_examples() {
        let a = set(2, vec![bx(&[(q(0, 1), q(1, 1)), (q(0, 1), q(1, 1))])]);
        assert!(interior_union_contains(&a, &[bx(&[(q(1, 4), q(1, 2)), (q(1, 4), q(1, 2))])]));
        assert!(!interior_union_contains(
            &BoxUnionSet::empty(2),
            &[bx(&[(q(0, 1), q(1, 1)), (q(0, 1), q(1, 1))])]
        ));
        // Abutting pair: the shared edge x = 1/2 is interior to the closed union.
        let left = bx(&[(q(0, 1), q(1, 2)), (q(5, 8), q(7, 8))]);
        let right = bx(&[(q(1, 2), q(9, 16)), (q(5, 8), q(7, 8))]);
        let pair = set(2, vec![left.clone(), right.clone()]);
        assert!(!interior_union_contains(&pair, &[left.clone(), right.clone()]));
        let bridge = bx(&[(q(1, 4), q(9, 16)), (q(5, 8), q(7, 8))]);
        let bridged = set(2, vec![left.clone(), right.clone(), bridge]);
        assert!(interior_union_contains(&bridged, &[left, right]));
    }

    #[test]
    fn interior_is_taken_inside_the_simplex() {
        let big = bx(&[(q(0, 1), q(1, 1)), (q(0, 1), q(1, 1))]);
        let upper = set(2, vec![big.clone()]);
        assert!(interior_union_contains(&upper, &[big.clone()]));
        let below = set(2, vec![bx(&[(q(1, 2), q(1, 1)), (q(0, 1), q(1, 2))])]);
        assert!(!interior_union_contains(&below, &[big]));
    }

    #[test]
    fn complement_points() {
        let s = set(2, vec![bx(&[(q(0, 1), q(1, 2)), (q(1, 2), q(1, 1))])]);
        let whole = bx(&[(q(0, 1), q(1, 1)), (q(0, 1), q(1, 1))]);
        let p = find_complement_point(&s, &whole).unwrap();
        assert!(s.complement_contains(&p) && p.in_open_simplex());
        let inside = bx(&[(q(1, 8), q(1, 4)), (q(5, 8), q(3, 4))]);
        assert_eq!(find_complement_point(&s, &inside), None);
    }

    #[test]
    fn sampling_examples() {
        let d = EssentialSimplex::full(2);
        let pts = sample_complement(&BoxUnionSet::empty(2), &d, 1);
        assert_eq!(pts, vec![Point::new(vec![q(1, 3), q(2, 3)])]);
        let cover = set(2, vec![bx(&[(q(0, 1), q(1, 1)), (q(0, 1), q(1, 1))])]);
        assert!(sample_complement(&cover, &d, 3).is_empty());
        let s = set(2, vec![bx(&[(q(0, 1), q(1, 2)), (q(1, 2), q(1, 1))])]);
        let pts = sample_complement(&s, &d, 2);
        assert!(!pts.is_empty());
        for p in pts {
            assert!(!s.contains_point(&p));
            assert!(in_essential_simplex(&p, &d));
        }
    }
}
