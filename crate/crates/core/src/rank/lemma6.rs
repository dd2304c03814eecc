//! The nested family of three-dimensional boxes with rank at least the
//! number of boxes, and its explicit witness.

use super::witness::{verify_witness3, RankWitness3D};
use crate::error::RankError;
use crate::geometry::{Box, BoxUnionSet};
use crate::rational::Rational;

fn violation(msg: String) -> RankError {
    RankError::HypothesisViolation(msg)
}

fn check(a: &[Rational], b: &[Rational], c: &[Rational], d: Rational) -> Result<(), RankError> {
    let m = a.len();
    if m == 0 || b.len() != m || c.len() != m {
        return Err(violation(format!("need equal nonempty lists, got {}, {}, {}", a.len(), b.len(), c.len())));
    }
    for i in 0..m {
        if !(a[i] < b[i] && b[i] <= c[i] && c[i] < d) {
            return Err(violation(format!("need a < b <= c < d at index {i}")));
        }
        if i + 1 < m {
            if !(a[0] < a[i + 1]) {
                return Err(violation(format!("need a_1 < a_{}", i + 2)));
            }
            if !(c[i + 1] < b[i]) {
                return Err(violation(format!("need c_{} < b_{}", i + 2, i + 1)));
            }
        }
    }
    if !(Rational::zero() <= a[0] && d <= Rational::one()) {
        return Err(violation("need 0 <= a_1 and d <= 1".into()));
    }
    let a_max = a.iter().copied().max().expect("nonempty");
    if !(a_max < b[m - 1]) {
        return Err(violation(format!("need every a below b_{m}")));
    }
    Ok(())
}

/// `S = ⋃ (a_i,b_i)² × (c_i,d)` with a witness of rank `≥ m`, `m` the list
/// length. Level `i` is `(x_i, x_i, z_i)` with `x_i` the midpoint of
/// `(z_{i−1}, b_{m−i+1})` and `z_i` the midpoint of `(c_{m−i+1}, b_{m−i})`,
/// where `z_0 = max a`, `b_0 = d`; the chain starts at `max a` and ends at `d`.
pub fn lemma6_witness(
    a: &[Rational],
    b: &[Rational],
    c: &[Rational],
    d: Rational,
) -> Result<(BoxUnionSet, RankWitness3D), RankError> {
    check(a, b, c, d)?;
    let m = a.len();
    let boxes = (0..m)
        .map(|i| Box::new(vec![(a[i], b[i]), (a[i], b[i]), (c[i], d)]))
        .collect::<Result<Vec<_>, _>>()?;
    let s = BoxUnionSet::new(3, boxes)?;
    let start = a.iter().copied().max().expect("nonempty");
    let b_at = |k: usize| if k == 0 { d } else { b[k - 1] };
    let mut levels = Vec::with_capacity(m);
    let mut z = start;
    for i in 1..=m {
        let x = Rational::midpoint(z, b[m - i]);
        z = Rational::midpoint(c[m - i], b_at(m - i));
        levels.push([x, x, z]);
    }
    let w = RankWitness3D { start, levels, end: d };
    if !verify_witness3(&s, &w) {
        return Err(RankError::WitnessConstructionFailed(format!("{w:?}")));
    }
    Ok((s, w))
}
