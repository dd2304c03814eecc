//! Copies of patterns: assignments of points to blocks whose coordinates
//! realize the order type the pattern prescribes.

mod complement;
mod essential;
mod search;

use serde::{Deserialize, Serialize};

use crate::geometry::{in_essential_simplex, EssentialSimplex, Point};
use crate::pattern::Pattern;
use crate::rational::Rational;

pub use complement::find_copy_in_complement;
pub use essential::{essential_at_depth, dyadic_regions, EssentialityReport, RegionOutcome, RegionResult};
pub use search::find_copy;

/// Points assigned to the ordered blocks of a pattern, in block order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyAssignment {
    pub pattern: Pattern,
    pub points: Vec<Point>,
}

impl CopyAssignment {
    /// The copy whose induced order function is `values`, `values[t] = f_σ(t)`.
    pub fn from_values(pattern: Pattern, values: &[Rational]) -> Self {
        let points = pattern
            .ordered_blocks()
            .iter()
            .map(|b| Point::new(b.iter().map(|&x| values[x]).collect()))
            .collect();
        CopyAssignment { pattern, points }
    }

    /// `f_σ` as a list indexed by `[N]`, or `None` if the assignment does not
    /// have one point of the right dimension per block.
    pub fn values(&self) -> Option<Vec<Rational>> {
        let blocks = self.pattern.ordered_blocks();
        if blocks.len() != self.points.len() {
            return None;
        }
        let mut values = vec![Rational::zero(); self.pattern.size()];
        for (b, p) in blocks.iter().zip(&self.points) {
            if p.dim() != b.len() {
                return None;
            }
            for (&x, &v) in b.iter().zip(&p.coords) {
                values[x] = v;
            }
        }
        Some(values)
    }

    /// `f_σ` when it is well defined and strictly increasing.
    pub fn order_function(&self) -> Option<Vec<Rational>> {
        self.values()
            .filter(|v| v.windows(2).all(|w| w[0] < w[1]))
    }

    /// The copy of `sub` obtained by composing with an order-preserving index
    /// map from `sub` into this copy's pattern, given as its list of images.
    pub fn pull_back(&self, sub: &Pattern, image: &[usize]) -> Option<CopyAssignment> {
        let values = self.values()?;
        let pulled: Vec<Rational> = image.iter().map(|&y| values.get(y).copied()).collect::<Option<_>>()?;
        Some(CopyAssignment::from_values(sub.clone(), &pulled))
    }
}

/// True iff every point lies in `F ∩ D`, the coordinate values are pairwise
/// distinct, and they are ordered as the pattern's indices.
pub fn verify_copy(c: &CopyAssignment, d: &EssentialSimplex, in_f: impl Fn(&Point) -> bool) -> bool {
    c.pattern.arity() == d.dim
        && c.order_function().is_some()
        && c.points.iter().all(|p| in_essential_simplex(p, d) && in_f(p))
}

/// The defining implication checked pairwise: for blocks `a, b` and
/// projections `p, q`, `p(a) < q(b)` forces `p(σa) < q(σb)`, and distinct
/// indices receive distinct values.
pub fn implication_holds(c: &CopyAssignment) -> bool {
    let blocks = c.pattern.ordered_blocks();
    if blocks.len() != c.points.len() {
        return false;
    }
    for (a, pa) in blocks.iter().zip(&c.points) {
        for (b, pb) in blocks.iter().zip(&c.points) {
            for (i, (&ai, &va)) in a.iter().zip(&pa.coords).enumerate() {
                for (j, (&bj, &vb)) in b.iter().zip(&pb.coords).enumerate() {
                    let same_index = std::ptr::eq(a, b) && i == j;
                    if ai < bj && va >= vb || (!same_index && va == vb) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
