//! Grid patterns.
//!
//! A grid of width `w` has one block per cell `(i,j)`, `1 ≤ i ≤ j ≤ w`. Its
//! indices split into `w` consecutive levels of `w+1` indices each; level
//! `j` holds the first coordinates of the cells `(j,j),…,(j,w)` and the
//! second coordinates of the cells `(1,j),…,(j,j)`. Only the levels are
//! prescribed, so a width fixes a family of patterns.

use itertools::Itertools;

use super::{embed::pattern_embeds, Pattern};
use crate::error::{BudgetExceeded, PatternError};

/// Assignment of the blocks of a grid to its cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridCells {
    pub width: usize,
    /// For each ordered block, its cell `(i,j)` (1-based).
    pub cells: Vec<(usize, usize)>,
}

/// Labels of level `j`: `Err(c)` is the first coordinate of cell `(j,c)`,
/// `Ok(r)` the second coordinate of cell `(r,j)`.
fn level_labels(w: usize, j: usize) -> Vec<Result<usize, usize>> {
    (j..=w).map(Err).chain((1..=j).map(Ok)).collect()
}

fn grid_from_orders(w: usize, orders: &[Vec<Result<usize, usize>>]) -> Pattern {
    let mut first = vec![vec![0usize; w + 1]; w + 1];
    let mut second = vec![vec![0usize; w + 1]; w + 1];
    for (lvl, order) in orders.iter().enumerate() {
        let j = lvl + 1;
        for (slot, label) in order.iter().enumerate() {
            let idx = lvl * (w + 1) + slot;
            match *label {
                Err(c) => first[j][c] = idx,
                Ok(r) => second[r][j] = idx,
            }
        }
    }
    let mut blocks = Vec::new();
    for i in 1..=w {
        for j in i..=w {
            blocks.push(vec![first[i][j], second[i][j]]);
        }
    }
    Pattern::new(2, blocks).expect("levels partition the indices")
}

/// The canonical grid: within each level, first coordinates by ascending
/// column, then second coordinates by ascending row.
pub fn grid_pattern(w: usize) -> Pattern {
    let orders: Vec<_> = (1..=w).map(|j| level_labels(w, j)).collect();
    grid_from_orders(w, &orders)
}

/// Cell assignment when `P` satisfies the level condition for width `w`.
pub fn grid_cells(p: &Pattern, w: usize) -> Option<GridCells> {
    if p.arity() != 2 || w == 0 || p.num_blocks() != w * (w + 1) / 2 {
        return None;
    }
    let level = |x: usize| x / (w + 1) + 1;
    let mut seen = vec![vec![false; w + 1]; w + 1];
    let mut cells = Vec::with_capacity(p.num_blocks());
    for b in p.ordered_blocks() {
        let (i, j) = (level(b[0]), level(b[1]));
        if seen[i][j] {
            return None;
        }
        seen[i][j] = true;
        cells.push((i, j));
    }
    Some(GridCells { width: w, cells })
}

pub fn is_grid(p: &Pattern, w: usize) -> bool {
    grid_cells(p, w).is_some()
}

/// All grids of width `w`: every within-level order in which the diagonal
/// cell's first coordinate precedes its second.
pub fn all_grids(w: usize) -> impl Iterator<Item = Pattern> {
    let per_level: Vec<Vec<Vec<Result<usize, usize>>>> = (1..=w)
        .map(|j| {
            let labels = level_labels(w, j);
            let n = labels.len();
            labels
                .into_iter()
                .permutations(n)
                .filter(|perm| {
                    let a = perm.iter().position(|l| *l == Err(j));
                    let b = perm.iter().position(|l| *l == Ok(j));
                    a < b
                })
                .collect()
        })
        .collect();
    per_level
        .into_iter()
        .multi_cartesian_product()
        .map(move |orders| grid_from_orders(w, &orders))
}

/// Number of grids of width `w`, `((w+1)!/2)^w`, saturating.
pub fn grid_count(w: usize) -> u64 {
    let per: u64 = (2..=(w as u64 + 1)).product::<u64>() / 2;
    (0..w).fold(1u64, |acc, _| acc.saturating_mul(per.max(1)))
}

/// Smallest `w` such that `P` embeds in every grid of width `w`, examining
/// at most `budget` grids in total.
pub fn min_grid_width(p: &Pattern, budget: u64) -> Result<usize, PatternError> {
    if p.arity() != 2 {
        return Err(PatternError::Index("grids have arity 2".into()));
    }
    let mut spent = 0u64;
    let mut w = 1usize;
    loop {
        if w * (w + 1) / 2 >= p.num_blocks() {
            let mut all = true;
            for g in all_grids(w) {
                spent += 1;
                if spent > budget {
                    return Err(BudgetExceeded {
                        what: "min_grid_width",
                        budget,
                    }
                    .into());
                }
                if !pattern_embeds(p, &g) {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(w);
            }
        }
        w += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(blocks: &[&[usize]]) -> Pattern {
        Pattern::new(2, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn canonical_grids() {
        assert_eq!(grid_pattern(1), pat(&[&[0, 1]]));
        assert!(is_grid(&pat(&[&[0, 1]]), 1));
        let g2 = grid_pattern(2);
        assert_eq!(g2, pat(&[&[0, 2], &[1, 4], &[3, 5]]));
        assert_eq!(g2.num_blocks(), 3);
        assert!(is_grid(&g2, 2));
        assert!(is_grid(&pat(&[&[0, 1], &[2, 3], &[4, 5]]), 2));
        assert!(!is_grid(&pat(&[&[0, 3], &[1, 4], &[2, 5]]), 2));
    }

    #[test]
    fn budget_is_enforced() {
        let crossing = pat(&[&[0, 2], &[1, 3]]);
        assert!(matches!(
            min_grid_width(&crossing, 100),
            Err(PatternError::Budget(_))
        ));
    }

    #[test]
    fn family_sizes() {
        assert_eq!(all_grids(1).count(), 1);
        assert_eq!(all_grids(2).count() as u64, grid_count(2));
        assert_eq!(grid_count(3), 1728);
        assert!(all_grids(2).all(|g| is_grid(&g, 2)));
    }

    #[test]
    fn min_width_examples() {
        assert_eq!(min_grid_width(&pat(&[&[0, 1]]), 10_000).unwrap(), 1);
        let w = min_grid_width(&pat(&[&[0, 1], &[2, 3]]), 10_000).unwrap();
        assert_eq!(w, 2);
        let nested = pat(&[&[0, 3], &[1, 2]]);
        let w = min_grid_width(&nested, 100_000).unwrap();
        assert!(all_grids(w).all(|g| pattern_embeds(&nested, &g)));
        assert!(!all_grids(w - 1).all(|g| pattern_embeds(&nested, &g)));
        assert!(pattern_embeds(&nested, &grid_pattern(w)));
    }
}
