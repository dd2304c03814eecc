//! Density and boundary-neighbourhood predicates on the triangle.

use super::Point;
use crate::rational::Rational;

fn sq_dist(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter()
        .zip(v)
        .map(|(a, b)| (*a - *b) * (*a - *b))
        .fold(Rational::zero(), |acc, d| acc + d)
}

/// True iff every vertex `(u,v)`, `u ≤ v`, of the grid with spacing `ε/2`
/// (plus the value `1`) lies at Euclidean distance `< ε` from some point.
pub fn eps_dense(points: &[Point], eps: Rational) -> bool {
    assert!(eps > Rational::zero(), "eps must be positive");
    let step = eps / Rational::from_integer(2);
    let mut ticks = Vec::new();
    let mut t = Rational::zero();
    while t < Rational::one() {
        ticks.push(t);
        t = t + step;
    }
    ticks.push(Rational::one());
    let eps2 = eps * eps;
    for (i, &u) in ticks.iter().enumerate() {
        for &v in &ticks[i..] {
            let vertex = [u, v];
            if !points.iter().any(|p| p.dim() == 2 && sq_dist(&p.coords, &vertex) < eps2) {
                return false;
            }
        }
    }
    true
}

/// Sufficient test for lying within `ε` of the boundary of `Δ²`:
/// `x < ε`, `y > 1 − ε` or `y − x < ε`.
pub fn in_boundary_nbhd(p: &Point, eps: Rational) -> bool {
    let (x, y) = (p.coords[0], p.coords[1]);
    x < eps || y > Rational::one() - eps || y - x < eps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn pt(x: Rational, y: Rational) -> Point {
        Point::new(vec![x, y])
    }

    #[test]
    fn density_examples() {
        let mut grid = Vec::new();
        for i in 0..=16 {
            for j in i..=16 {
                grid.push(pt(q(i, 16), q(j, 16)));
            }
        }
        assert!(eps_dense(&grid, q(1, 4)));
        assert!(!eps_dense(&[pt(q(1, 2), q(1, 2))], q(1, 8)));
        assert!(!eps_dense(&[], q(1, 1)));
    }

    #[test]
    fn boundary_examples() {
        assert!(in_boundary_nbhd(&pt(q(1, 16), q(1, 2)), q(1, 8)));
        assert!(in_boundary_nbhd(&pt(q(1, 2), q(9, 16)), q(1, 8)));
        assert!(!in_boundary_nbhd(&pt(q(1, 4), q(3, 4)), q(1, 8)));
    }
}
