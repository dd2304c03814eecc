//! Backtracking search for a copy among finitely many points.

use super::CopyAssignment;
use crate::error::BudgetExceeded;
use crate::geometry::{in_essential_simplex, EssentialSimplex, Point};
use crate::pattern::Pattern;
use crate::rational::Rational;

struct Search<'a> {
    blocks: &'a [Vec<usize>],
    points: Vec<Point>,
    values: Vec<Option<Rational>>,
    chosen: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn consistent(&self, x: usize, v: Rational) -> bool {
        self.values.iter().enumerate().all(|(y, w)| match w {
            Some(w) => (y < x && *w < v) || (y > x && *w > v),
            None => true,
        })
    }

    fn run(&mut self, bi: usize) -> Result<bool, BudgetExceeded> {
        if bi == self.blocks.len() {
            return Ok(true);
        }
        let block = &self.blocks[bi];
        // Blocks are listed by first index, so their first values ascend.
        let start = match bi {
            0 => 0,
            _ => {
                let prev = self.values[self.blocks[bi - 1][0]].expect("assigned");
                self.points.partition_point(|p| p.coords[0] <= prev)
            }
        };
        for pi in start..self.points.len() {
            if self.used[pi] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(BudgetExceeded {
                    what: "find_copy",
                    budget: self.budget,
                });
            }
            let coords = self.points[pi].coords.clone();
            let mut placed = 0;
            for (&x, &v) in block.iter().zip(&coords) {
                if !self.consistent(x, v) {
                    break;
                }
                self.values[x] = Some(v);
                placed += 1;
            }
            if placed == block.len() {
                self.used[pi] = true;
                self.chosen.push(pi);
                if self.run(bi + 1)? {
                    return Ok(true);
                }
                self.chosen.pop();
                self.used[pi] = false;
            }
            for &x in &block[..placed] {
                self.values[x] = None;
            }
        }
        Ok(false)
    }
}

/// A copy of `P` among `points ∩ D`, lexicographically least in the sorted
/// order of the points, trying at most `budget` point placements.
pub fn find_copy(
    p: &Pattern,
    points: &[Point],
    d: &EssentialSimplex,
    budget: u64,
) -> Result<Option<CopyAssignment>, BudgetExceeded> {
    if p.arity() != d.dim {
        return Ok(None);
    }
    let mut candidates: Vec<Point> = points
        .iter()
        .filter(|pt| in_essential_simplex(pt, d) && pt.coords.windows(2).all(|w| w[0] < w[1]))
        .cloned()
        .collect();
    candidates.sort();
    candidates.dedup();
    let n = candidates.len();
    let mut s = Search {
        blocks: p.ordered_blocks(),
        points: candidates,
        values: vec![None; p.size()],
        chosen: Vec::new(),
        used: vec![false; n],
        nodes: 0,
        budget,
    };
    if !s.run(0)? {
        return Ok(None);
    }
    let chosen = s.chosen.iter().map(|&i| s.points[i].clone()).collect();
    Ok(Some(CopyAssignment {
        pattern: p.clone(),
        points: chosen,
    }))
}
