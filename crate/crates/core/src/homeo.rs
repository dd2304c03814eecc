//! Increasing piecewise-linear bijections of `[0,1]` and their diagonal
//! action on points, boxes and box unions.

use serde::{Deserialize, Serialize};

use crate::copy::{find_copy_in_complement, CopyAssignment};
use crate::error::HomeoError;
use crate::geometry::{eps_dense, in_boundary_nbhd, sample_complement, Box, BoxUnionSet, EssentialSimplex, Point};
use crate::pattern::grid_pattern;
use crate::rank::{verify_witness2, RankWitness2D};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHomeo")]
pub struct PLHomeo {
    breakpoints: Vec<(Rational, Rational)>,
}

#[derive(Deserialize)]
struct RawHomeo {
    breakpoints: Vec<(Rational, Rational)>,
}

impl TryFrom<RawHomeo> for PLHomeo {
    type Error = HomeoError;

    fn try_from(raw: RawHomeo) -> Result<Self, HomeoError> {
        PLHomeo::from_breakpoints(raw.breakpoints)
    }
}

fn strictly_increasing(v: &[Rational]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

impl PLHomeo {
    pub fn identity() -> Self {
        PLHomeo {
            breakpoints: vec![(Rational::zero(), Rational::zero()), (Rational::one(), Rational::one())],
        }
    }

    /// Breakpoints must run from `(0,0)` to `(1,1)`, increasing in both entries.
    pub fn from_breakpoints(breakpoints: Vec<(Rational, Rational)>) -> Result<Self, HomeoError> {
        let ts: Vec<Rational> = breakpoints.iter().map(|b| b.0).collect();
        let vs: Vec<Rational> = breakpoints.iter().map(|b| b.1).collect();
        let ends = breakpoints.first() == Some(&(Rational::zero(), Rational::zero()))
            && breakpoints.last() == Some(&(Rational::one(), Rational::one()));
        if !ends || !strictly_increasing(&ts) || !strictly_increasing(&vs) {
            return Err(HomeoError::Monotonicity(format!("{breakpoints:?}")));
        }
        Ok(PLHomeo { breakpoints })
    }

    /// The map fixing 0 and 1 with `src_i ↦ dst_i`, linear in between.
    pub fn through_points(src: &[Rational], dst: &[Rational]) -> Result<Self, HomeoError> {
        if src.len() != dst.len() {
            return Err(HomeoError::Length(src.len(), dst.len()));
        }
        let mut bp = vec![(Rational::zero(), Rational::zero())];
        bp.extend(src.iter().copied().zip(dst.iter().copied()));
        bp.push((Rational::one(), Rational::one()));
        Self::from_breakpoints(bp)
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    fn eval(pieces: &[(Rational, Rational)], t: Rational) -> Rational {
        let k = pieces.partition_point(|b| b.0 < t);
        if k == 0 {
            return pieces[0].1;
        }
        if k == pieces.len() {
            return pieces[k - 1].1;
        }
        let ((t0, v0), (t1, v1)) = (pieces[k - 1], pieces[k]);
        if t == t1 {
            return v1;
        }
        v0 + (v1 - v0) * (t - t0) / (t1 - t0)
    }

    /// `g(t)` for `t ∈ [0,1]`; values outside are clamped.
    pub fn apply(&self, t: Rational) -> Rational {
        Self::eval(&self.breakpoints, t)
    }

    pub fn apply_point(&self, p: &Point) -> Point {
        p.map(|t| self.apply(t))
    }

    /// The image of an open box is the open box of endpoint images.
    pub fn apply_box(&self, b: &Box) -> Box {
        let iv = b.intervals().iter().map(|&(lo, hi)| (self.apply(lo), self.apply(hi))).collect();
        Box::new(iv).expect("increasing maps keep lo < hi")
    }

    pub fn apply_set(&self, s: &BoxUnionSet) -> BoxUnionSet {
        BoxUnionSet::new(s.dim(), s.boxes().iter().map(|b| self.apply_box(b)).collect()).expect("same dimension")
    }

    pub fn inverse(&self) -> PLHomeo {
        PLHomeo {
            breakpoints: self.breakpoints.iter().map(|&(t, v)| (v, t)).collect(),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PLHomeo) -> PLHomeo {
        let back = inner.inverse();
        let mut ts: Vec<Rational> = inner.breakpoints.iter().map(|b| b.0).collect();
        ts.extend(self.breakpoints.iter().map(|b| back.apply(b.0)));
        ts.sort();
        ts.dedup();
        PLHomeo {
            breakpoints: ts.into_iter().map(|t| (t, self.apply(inner.apply(t)))).collect(),
        }
    }
}

/// Sends the interleaved reals `x_1 < y_1 < … < x_{n+1} < y_{n+1}` to
/// `x_i ↦ (2i−1)/(2n+3)` and `y_i ↦ 2i/(2n+3)`.
pub fn densify_from_grid(x: &[Rational], y: &[Rational], n: usize) -> Result<PLHomeo, HomeoError> {
    if x.len() != n + 1 || y.len() != n + 1 {
        return Err(HomeoError::Length(x.len(), y.len()));
    }
    let den = 2 * n as i128 + 3;
    let mut src = Vec::with_capacity(2 * n + 2);
    let mut dst = Vec::with_capacity(2 * n + 2);
    for i in 0..=n {
        let k = i as i128 + 1;
        src.extend([x[i], y[i]]);
        dst.extend([Rational::new(2 * k - 1, den), Rational::new(2 * k, den)]);
    }
    PLHomeo::through_points(&src, &dst)
}

/// Squeezes the complement of a staircase towards the boundary: with
/// `β = 1/(2n+4)`, `x0 ↦ β`, `x_i ↦ 2iβ`, `y_i ↦ (2i+1)β`, `y_end ↦ 1−β`,
/// using the first `n` steps of `w`. A step with `x_i = y_i` first moves
/// `x_i` to the midpoint of it and the previous chain value, which shrinks
/// the rectangle. Prescriptions at `0` or `1` are dropped since the map
/// fixes both ends.
pub fn thin_from_witness(w: &RankWitness2D, n: usize) -> Result<PLHomeo, HomeoError> {
    if n == 0 || n > w.pairs.len() {
        return Err(HomeoError::Length(n, w.pairs.len()));
    }
    let beta = Rational::new(1, 2 * n as i128 + 4);
    let mut src = vec![w.x0];
    let mut dst = vec![beta];
    let mut prev = w.x0;
    for (i, &(x, y)) in w.pairs[..n].iter().enumerate() {
        let k = Rational::from_integer(2 * (i as i128 + 1));
        let x = if x == y { Rational::midpoint(prev, x) } else { x };
        src.extend([x, y]);
        dst.extend([k * beta, (k + Rational::one()) * beta]);
        prev = y;
    }
    src.push(w.y_end);
    dst.push(Rational::one() - beta);
    let (src, dst): (Vec<_>, Vec<_>) = src
        .into_iter()
        .zip(dst)
        .filter(|(t, _)| *t != Rational::zero() && *t != Rational::one())
        .unzip();
    PLHomeo::through_points(&src, &dst)
}

/// Separating reals `x_1 < y_1 < … < x_{w+1} < y_{w+1}` for the values of
/// a width-`w` grid copy: `x_j, y_j` split the gap below level `j` in
/// thirds, the last pair the gap above level `w`. `None` unless the values
/// increase inside `(0,1)`.
pub fn grid_separators(values: &[Rational], w: usize) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let len = w + 1;
    if w == 0 || values.len() != w * len || values.windows(2).any(|v| v[0] >= v[1]) {
        return None;
    }
    if values[0] <= Rational::zero() || values[values.len() - 1] >= Rational::one() {
        return None;
    }
    let mut x = Vec::with_capacity(len);
    let mut y = Vec::with_capacity(len);
    for j in 0..=w {
        let lo = if j == 0 { Rational::zero() } else { values[j * len - 1] };
        let hi = if j == w { Rational::one() } else { values[j * len] };
        x.push(Rational::lerp_step(lo, hi, 1, 3));
        y.push(Rational::lerp_step(lo, hi, 2, 3));
    }
    Some((x, y))
}

/// A densifying map built from a grid copy found in `F`, and the verdict
/// of the density test on the image of the copy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensifyCheck {
    pub width: usize,
    pub copy: CopyAssignment,
    pub homeo: PLHomeo,
    pub image: Vec<Point>,
    pub eps: Rational,
    pub dense: bool,
}

/// Finds a copy of the width-`n` grid in `Δ² ∖ S`, sends its separators to
/// `k/(2n+3)` and tests the image of the copy for `ε`-density. `None` when
/// the search finds no copy within `budget`.
pub fn densify_check(s: &BoxUnionSet, n: usize, eps: Rational, budget: u64) -> Result<Option<DensifyCheck>, HomeoError> {
    if s.dim() != 2 || n == 0 || eps <= Rational::zero() {
        return Err(HomeoError::Input("need a planar set, n >= 1 and eps > 0".into()));
    }
    let grid = grid_pattern(n);
    let q = grid.size().div_ceil(2);
    let Ok(Some(copy)) = find_copy_in_complement(&grid, s, &EssentialSimplex::full(2), q, budget) else {
        return Ok(None);
    };
    let values = copy.order_function().ok_or_else(|| HomeoError::Input("copy without order function".into()))?;
    let (x, y) = grid_separators(&values, n).ok_or_else(|| HomeoError::Input("grid values out of range".into()))?;
    let homeo = densify_from_grid(&x, &y, n)?;
    let image: Vec<Point> = copy.points.iter().map(|p| homeo.apply_point(p)).collect();
    let dense = eps_dense(&image, eps);
    Ok(Some(DensifyCheck {
        width: n,
        copy,
        homeo,
        image,
        eps,
        dense,
    }))
}

/// A thinning map built from a rank witness of `S`, and the sampled points
/// of `F` whose image leaves the boundary neighbourhood.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinCheck {
    pub steps: usize,
    pub homeo: PLHomeo,
    pub eps: Rational,
    pub sampled: usize,
    pub violations: Vec<Point>,
}

/// Thins by the first `n` steps of `w`, which must verify against `S`,
/// and tests every sample of `Δ² ∖ S` (density `q`) against the
/// `4/(2n+4)`-neighbourhood of the boundary.
pub fn thin_check(s: &BoxUnionSet, w: &RankWitness2D, n: usize, q: usize) -> Result<ThinCheck, HomeoError> {
    if s.dim() != 2 || !verify_witness2(s, w) {
        return Err(HomeoError::Input("the witness does not verify against the set".into()));
    }
    let homeo = thin_from_witness(w, n)?;
    let eps = Rational::new(4, 2 * n as i128 + 4);
    let sample = sample_complement(s, &EssentialSimplex::full(2), q);
    let violations = sample
        .iter()
        .map(|p| homeo.apply_point(p))
        .filter(|p| !in_boundary_nbhd(p, eps))
        .collect();
    Ok(ThinCheck {
        steps: n,
        homeo,
        eps,
        sampled: sample.len(),
        violations,
    })
}
