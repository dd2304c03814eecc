//! Exact copy search in the complement of a box union.
//!
//! Indices of the pattern are placed, in increasing order, on positions of
//! the face lattice of `S` refined by `a` and `b`. Consecutive indices move
//! to a later position or share an open cell, which holds at most `q·n` of
//! them. Once a block is placed its face must be uncovered by `S`. The
//! placed values are the sample values of [`crate::geometry::sample_complement`]
//! with the same `q` (up to the choice of slots inside a cell), so the search
//! finds a copy exactly when one exists among those samples.

use super::CopyAssignment;
use crate::error::BudgetExceeded;
use crate::geometry::{BoxUnionSet, EssentialSimplex, FaceTable, Lattice, Position};
use crate::pattern::Pattern;

struct Placement<'a> {
    table: &'a FaceTable,
    blocks: &'a [Vec<usize>],
    /// For each index, its block and slot inside the block.
    slot: Vec<(usize, usize)>,
    hi: Position,
    cap: usize,
    pos: Vec<Position>,
    nodes: u64,
    budget: u64,
}

impl Placement<'_> {
    fn block_feasible(&self, t: usize) -> bool {
        let (b, s) = self.slot[t];
        let block = &self.blocks[b];
        if s + 1 == block.len() {
            let face: Vec<Position> = block.iter().map(|&x| self.pos[x]).collect();
            return !self.table.is_covered(&face);
        }
        let here = self.pos[t];
        let ranges: Vec<(Position, Position)> = block
            .iter()
            .enumerate()
            .map(|(k, &x)| if k <= s { (self.pos[x], self.pos[x]) } else { (here, self.hi) })
            .collect();
        self.table.uncovered_in(&ranges) > 0
    }

    fn run(&mut self, t: usize, lo: Position, run_len: usize) -> Result<bool, BudgetExceeded> {
        if t == self.pos.len() {
            return Ok(true);
        }
        let (start, shared) = match t {
            0 => (lo, 0),
            _ => {
                let prev = self.pos[t - 1];
                if Lattice::is_cell(prev) && run_len < self.cap {
                    (prev, run_len)
                } else {
                    (prev + 1, 0)
                }
            }
        };
        for p in start..=self.hi {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(BudgetExceeded {
                    what: "find_copy_in_complement",
                    budget: self.budget,
                });
            }
            self.pos[t] = p;
            if !self.block_feasible(t) {
                continue;
            }
            let next_run = if t > 0 && p == self.pos[t - 1] { shared + 1 } else { 1 };
            if self.run(t + 1, lo, next_run)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// A copy of `P` in `(Δⁿ ∖ S) ∩ D`, searched on the face lattice with
/// `q·n` slots per open cell. The lexicographically least placement is
/// returned, and at most `budget` placements are tried.
pub fn find_copy_in_complement(
    p: &Pattern,
    s: &BoxUnionSet,
    d: &EssentialSimplex,
    q: usize,
    budget: u64,
) -> Result<Option<CopyAssignment>, BudgetExceeded> {
    let n = p.arity();
    if n != d.dim || n != s.dim() || q == 0 {
        return Ok(None);
    }
    if p.is_empty() {
        return Ok(Some(CopyAssignment {
            pattern: p.clone(),
            points: Vec::new(),
        }));
    }
    let lattice = Lattice::new(s.endpoints().into_iter().chain([d.a, d.b]));
    let Some((lo, hi)) = lattice.open_range(d.a, d.b) else {
        return Ok(None);
    };
    let table = FaceTable::open_cover(lattice.clone(), n, s.boxes());
    let mut slot = vec![(0, 0); p.size()];
    for (b, block) in p.ordered_blocks().iter().enumerate() {
        for (k, &x) in block.iter().enumerate() {
            slot[x] = (b, k);
        }
    }
    let cap = q * n;
    let mut search = Placement {
        table: &table,
        blocks: p.ordered_blocks(),
        slot,
        hi,
        cap,
        pos: vec![0; p.size()],
        nodes: 0,
        budget,
    };
    if !search.run(0, lo, 0)? {
        return Ok(None);
    }
    let values = lattice.realize(&search.pos, cap);
    let copy = CopyAssignment::from_values(p.clone(), &values);
    debug_assert!(super::verify_copy(&copy, d, |pt| !s.covers(pt)));
    Ok(Some(copy))
}
