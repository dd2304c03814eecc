//! Points of the simplex, open boxes, box-union sets and essential simplices.
//!
//! A [`BoxUnionSet`] denotes `(∪ boxes) ∩ Δⁿ`. Membership is constant on the
//! faces of the arrangement cut out by the box endpoints; every exact
//! predicate in this module is decided face by face on a [`Lattice`].

mod containment;
mod lattice;
mod metric;

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::rational::Rational;

pub use containment::{
    arrangement_coords, contains_box, find_complement_point, interior_union_contains,
    sample_complement, SetIndex,
};
pub use lattice::{FaceTable, Lattice, Position};
pub use metric::{eps_dense, in_boundary_nbhd};

/// A point of `[0,1]ⁿ`; it lies in `Δⁿ` when its coordinates are non-decreasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    pub coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Coordinates non-decreasing and inside `[0,1]`.
    pub fn in_simplex(&self) -> bool {
        self.coords.iter().all(Rational::in_unit) && self.coords.windows(2).all(|w| w[0] <= w[1])
    }

    /// Coordinates strictly increasing and strictly inside `(0,1)`.
    pub fn in_open_simplex(&self) -> bool {
        let zero = Rational::zero();
        let one = Rational::one();
        self.coords.iter().all(|c| *c > zero && *c < one)
            && self.coords.windows(2).all(|w| w[0] < w[1])
    }

    pub fn map(&self, f: impl Fn(Rational) -> Rational) -> Point {
        Point::new(self.coords.iter().map(|c| f(*c)).collect())
    }
}

pub fn in_simplex(p: &Point) -> bool {
    p.in_simplex()
}

/// An open axis-aligned box `(lo_1,hi_1) × … × (lo_n,hi_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(Rational, Rational)>", into = "Vec<(Rational, Rational)>")]
pub struct Box {
    intervals: Vec<(Rational, Rational)>,
}

impl Box {
    pub fn new(intervals: Vec<(Rational, Rational)>) -> Result<Self, GeometryError> {
        for &(lo, hi) in &intervals {
            if lo >= hi {
                return Err(GeometryError::EmptyInterval {
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                });
            }
        }
        Ok(Box { intervals })
    }

    /// The cube `(lo,hi)ⁿ`.
    pub fn cube(lo: Rational, hi: Rational, dim: usize) -> Result<Self, GeometryError> {
        Box::new(vec![(lo, hi); dim])
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn lo(&self, axis: usize) -> Rational {
        self.intervals[axis].0
    }

    pub fn hi(&self, axis: usize) -> Rational {
        self.intervals[axis].1
    }

    /// Strict containment in the open box.
    pub fn contains_point(&self, p: &Point) -> bool {
        p.dim() == self.dim()
            && self
                .intervals
                .iter()
                .zip(&p.coords)
                .all(|(&(lo, hi), c)| lo < *c && *c < hi)
    }

    /// Containment in the closed box `[lo_1,hi_1] × …`.
    pub fn closure_contains_point(&self, p: &Point) -> bool {
        p.dim() == self.dim()
            && self
                .intervals
                .iter()
                .zip(&p.coords)
                .all(|(&(lo, hi), c)| lo <= *c && *c <= hi)
    }
}

impl TryFrom<Vec<(Rational, Rational)>> for Box {
    type Error = GeometryError;
    fn try_from(v: Vec<(Rational, Rational)>) -> Result<Self, Self::Error> {
        Box::new(v)
    }
}

impl From<Box> for Vec<(Rational, Rational)> {
    fn from(b: Box) -> Self {
        b.intervals
    }
}

/// A finite union of open boxes, restricted to `Δⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBoxUnion")]
pub struct BoxUnionSet {
    dim: usize,
    boxes: Vec<Box>,
}

#[derive(Deserialize)]
struct RawBoxUnion {
    dim: usize,
    boxes: Vec<Box>,
}

impl TryFrom<RawBoxUnion> for BoxUnionSet {
    type Error = GeometryError;
    fn try_from(raw: RawBoxUnion) -> Result<Self, Self::Error> {
        BoxUnionSet::new(raw.dim, raw.boxes)
    }
}

impl BoxUnionSet {
    pub fn new(dim: usize, boxes: Vec<Box>) -> Result<Self, GeometryError> {
        if !(1..=3).contains(&dim) {
            return Err(GeometryError::UnsupportedDimension(dim));
        }
        for b in &boxes {
            if b.dim() != dim {
                return Err(GeometryError::Dimension {
                    expected: dim,
                    found: b.dim(),
                });
            }
        }
        Ok(BoxUnionSet { dim, boxes })
    }

    pub fn empty(dim: usize) -> Self {
        BoxUnionSet::new(dim, Vec::new()).expect("supported dimension")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boxes(&self) -> &[Box] {
        &self.boxes
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn with_box(&self, b: Box) -> Result<Self, GeometryError> {
        let mut boxes = self.boxes.clone();
        boxes.push(b);
        BoxUnionSet::new(self.dim, boxes)
    }

    /// Point lies in some box, ignoring the simplex restriction.
    pub fn covers(&self, p: &Point) -> bool {
        self.boxes.iter().any(|b| b.contains_point(p))
    }

    /// Membership in `(∪ boxes) ∩ Δⁿ`.
    pub fn contains_point(&self, p: &Point) -> bool {
        p.in_simplex() && self.covers(p)
    }

    /// Membership in the complement `F = Δⁿ ∖ S`.
    pub fn complement_contains(&self, p: &Point) -> bool {
        p.in_simplex() && !self.covers(p)
    }

    /// All box endpoints, all axes merged.
    pub fn endpoints(&self) -> Vec<Rational> {
        self.boxes
            .iter()
            .flat_map(|b| b.intervals().iter().flat_map(|&(lo, hi)| [lo, hi]))
            .collect()
    }
}

/// The open sub-simplex `D_{a,b}` of points with every coordinate in `(a,b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSimplex")]
pub struct EssentialSimplex {
    pub a: Rational,
    pub b: Rational,
    pub dim: usize,
}

#[derive(Deserialize)]
struct RawSimplex {
    a: Rational,
    b: Rational,
    dim: usize,
}

impl TryFrom<RawSimplex> for EssentialSimplex {
    type Error = GeometryError;
    fn try_from(raw: RawSimplex) -> Result<Self, Self::Error> {
        EssentialSimplex::new(raw.a, raw.b, raw.dim)
    }
}

impl EssentialSimplex {
    pub fn new(a: Rational, b: Rational, dim: usize) -> Result<Self, GeometryError> {
        if !(Rational::zero() <= a && a < b && b <= Rational::one()) {
            return Err(GeometryError::BadSimplex {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        Ok(EssentialSimplex { a, b, dim })
    }

    pub fn full(dim: usize) -> Self {
        EssentialSimplex {
            a: Rational::zero(),
            b: Rational::one(),
            dim,
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        in_essential_simplex(p, self)
    }

    /// `(a,b)ⁿ` as a box.
    pub fn as_box(&self) -> Box {
        Box::cube(self.a, self.b, self.dim).expect("a < b")
    }
}

/// True iff `p ∈ Δⁿ` and every coordinate lies strictly in `(a,b)`.
pub fn in_essential_simplex(p: &Point, d: &EssentialSimplex) -> bool {
    p.dim() == d.dim && p.in_simplex() && p.coords.iter().all(|c| d.a < *c && *c < d.b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn pt(c: &[(i128, i128)]) -> Point {
        Point::new(c.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn simplex_membership() {
        assert!(pt(&[(1, 4), (1, 2)]).in_simplex());
        assert!(!pt(&[(1, 2), (1, 4)]).in_simplex());
        assert!(pt(&[(0, 1), (0, 1), (1, 1)]).in_simplex());
    }

    #[test]
    fn essential_simplex_membership() {
        let d01 = EssentialSimplex::full(2);
        assert!(in_essential_simplex(&pt(&[(1, 4), (1, 2)]), &d01));
        assert!(!in_essential_simplex(&pt(&[(0, 1), (1, 2)]), &d01));
        let d = EssentialSimplex::new(q(1, 4), q(1, 2), 3).unwrap();
        assert!(in_essential_simplex(&pt(&[(3, 8), (3, 8), (7, 16)]), &d));
    }

    #[test]
    fn rejects_degenerate_boxes_and_simplices() {
        assert!(Box::new(vec![(q(1, 2), q(1, 2))]).is_err());
        assert!(EssentialSimplex::new(q(1, 2), q(1, 4), 2).is_err());
        assert!(BoxUnionSet::new(4, vec![]).is_err());
    }

    #[test]
    fn json_shapes() {
        let s = BoxUnionSet::new(2, vec![Box::new(vec![(q(0, 1), q(1, 2)), (q(1, 2), q(1, 1))]).unwrap()])
            .unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"dim":2,"boxes":[[["0/1","1/2"],["1/2","1/1"]]]}"#);
        let back: BoxUnionSet = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        let d: EssentialSimplex = serde_json::from_str(r#"{"a":"1/4","b":"1/2","dim":3}"#).unwrap();
        assert_eq!(d.b, q(1, 2));
        assert!(serde_json::from_str::<EssentialSimplex>(r#"{"a":"1/2","b":"1/4","dim":3}"#).is_err());
        assert!(serde_json::from_str::<BoxUnionSet>(r#"{"dim":2,"boxes":[[["1/2","1/4"],["0","1"]]]}"#).is_err());
    }
}
