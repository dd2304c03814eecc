//! Exact rank search on the face lattice of a box union.
//!
//! Witness values are placed on lattice positions: a strict step moves to a
//! later position or stays inside the same open cell, a non-strict step may
//! also stay on the same breakpoint. Containment of an open box depends only
//! on the positions of its endpoints, so every witness has a positional
//! shadow and every positional solution realizes to a witness.

use super::witness::{verify_witness3, RankReport, RankWitness, RankWitness2D, RankWitness3D};
use crate::error::{BudgetExceeded, GeometryError, RankError};
use crate::geometry::{BoxUnionSet, FaceTable, Lattice, Position};

/// Node budget used by [`rank`] and [`rank_at_least`].
pub const DEFAULT_BUDGET: u64 = 50_000_000;

fn succ(p: Position) -> Position {
    if Lattice::is_cell(p) {
        p
    } else {
        p + 1
    }
}

/// Positions covered by the open interval between values at `v` and `w`.
fn open_between(v: Position, w: Position) -> (Position, Position) {
    let lo = if Lattice::is_cell(v) { v } else { v + 1 };
    let hi = if Lattice::is_cell(w) { w } else { w.wrapping_sub(1) };
    (lo, hi)
}

struct Planar {
    lattice: Lattice,
    table: FaceTable,
}

impl Planar {
    fn new(s: &BoxUnionSet) -> Self {
        let lattice = Lattice::new(s.endpoints());
        let table = FaceTable::open_cover(lattice.clone(), 2, s.boxes());
        Planar { lattice, table }
    }

    /// Greedy staircase from `x0` to `ye`, at most `limit` steps.
    fn greedy(&self, x0: Position, ye: Position, limit: usize) -> Vec<(Position, Position)> {
        let mut pairs = Vec::new();
        let mut prev = x0;
        let y_max = if Lattice::is_cell(ye) { ye } else { ye - 1 };
        while pairs.len() < limit {
            let x = succ(prev);
            if x > y_max {
                break;
            }
            let xr = open_between(x0, x);
            let found = (x..=y_max).find(|&y| self.table.range_covered(&[xr, open_between(y, ye)]));
            match found {
                Some(y) => {
                    pairs.push((x, y));
                    prev = y;
                }
                None => break,
            }
        }
        pairs
    }

    fn realize(&self, x0: Position, pairs: &[(Position, Position)], ye: Position) -> RankWitness2D {
        let mut seq = vec![x0];
        for &(x, y) in pairs {
            seq.push(x);
            seq.push(y);
        }
        seq.push(ye);
        let v = self.lattice.realize(&seq, seq.len());
        RankWitness2D {
            x0: v[0],
            pairs: v[1..v.len() - 1].chunks(2).map(|c| (c[0], c[1])).collect(),
            y_end: v[v.len() - 1],
        }
    }

    /// Longest staircase up to `cap` steps; ties go to the least `(x0, ye)`.
    fn best(&self, cap: usize) -> Option<RankWitness2D> {
        let last = self.lattice.last();
        let mut best: Option<(Position, Vec<(Position, Position)>, Position)> = None;
        for x0 in 0..=last {
            for ye in succ(x0)..=last {
                let pairs = self.greedy(x0, ye, cap);
                if pairs.len() > best.as_ref().map_or(0, |b| b.1.len()) {
                    let done = pairs.len() == cap;
                    best = Some((x0, pairs, ye));
                    if done {
                        let (x0, pairs, ye) = best.expect("just set");
                        return Some(self.realize(x0, &pairs, ye));
                    }
                }
            }
        }
        best.map(|(x0, pairs, ye)| self.realize(x0, &pairs, ye))
    }
}

/// Slot layout of a three-dimensional witness of order `m`: slot 0 is the
/// start, level `i` occupies slots `3i−2..=3i`, slot `3m+1` is the end.
struct Spatial {
    lattice: Lattice,
    table: FaceTable,
    m: usize,
    strict: Vec<bool>,
    /// Boxes to check once a slot is placed: `(box, complete)`.
    checks: Vec<Vec<(usize, bool)>>,
    boxes: Vec<[(usize, usize); 3]>,
    budget: u64,
    nodes: u64,
}

fn slot(m: usize, axis: usize, level: usize) -> usize {
    match level {
        0 => 0,
        l if l == m + 1 => 3 * m + 1,
        l => 3 * (l - 1) + 1 + axis,
    }
}

impl Spatial {
    fn new(s: &BoxUnionSet, m: usize, budget: u64) -> Self {
        let lattice = Lattice::new(s.endpoints());
        let table = FaceTable::open_cover(lattice.clone(), 3, s.boxes());
        let n_slots = 3 * m + 2;
        let mut strict = vec![false; n_slots];
        for i in 1..=m {
            strict[slot(m, 0, i)] = true;
        }
        strict[n_slots - 1] = true;
        let mut boxes = Vec::new();
        let mut checks = vec![Vec::new(); n_slots];
        for [i1, i2, i3] in RankWitness3D::box_indices(m) {
            let b = [
                (slot(m, 0, i1), slot(m, 0, i1 + 1)),
                (slot(m, 1, i2), slot(m, 1, i2 + 1)),
                (slot(m, 2, i3), slot(m, 2, i3 + 1)),
            ];
            checks[b[2].0].push((boxes.len(), false));
            checks[b[2].1].push((boxes.len(), true));
            boxes.push(b);
        }
        Spatial {
            lattice,
            table,
            m,
            strict,
            checks,
            boxes,
            budget,
            nodes: 0,
        }
    }

    fn box_ok(&self, pos: &[Position], bi: usize, complete: bool) -> bool {
        let b = &self.boxes[bi];
        let r0 = open_between(pos[b[0].0], pos[b[0].1]);
        let r1 = open_between(pos[b[1].0], pos[b[1].1]);
        let r2 = if complete {
            open_between(pos[b[2].0], pos[b[2].1])
        } else {
            let lo = open_between(pos[b[2].0], pos[b[2].0]).0;
            (lo, lo)
        };
        if r2.0 > self.lattice.last() {
            return false;
        }
        self.table.range_covered(&[r0, r1, r2])
    }

    fn realize(&self, pos: &[Position]) -> RankWitness3D {
        let v = self.lattice.realize(pos, pos.len());
        RankWitness3D {
            start: v[0],
            levels: (0..self.m).map(|i| [v[3 * i + 1], v[3 * i + 2], v[3 * i + 3]]).collect(),
            end: v[3 * self.m + 1],
        }
    }

    fn dfs(
        &mut self,
        s: &BoxUnionSet,
        pos: &mut Vec<Position>,
    ) -> Result<Option<RankWitness3D>, BudgetExceeded> {
        let k = pos.len();
        if k == self.strict.len() {
            let w = self.realize(pos);
            return Ok(verify_witness3(s, &w).then_some(w));
        }
        let start = match k {
            0 => 0,
            _ if self.strict[k] => succ(pos[k - 1]),
            _ => pos[k - 1],
        };
        for p in start..=self.lattice.last() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(BudgetExceeded {
                    what: "rank search",
                    budget: self.budget,
                });
            }
            pos.push(p);
            let ok = self.checks[k].iter().all(|&(bi, complete)| self.box_ok(pos, bi, complete));
            if ok {
                if let Some(w) = self.dfs(s, pos)? {
                    return Ok(Some(w));
                }
            }
            pos.pop();
        }
        Ok(None)
    }
}

fn check_dim(s: &BoxUnionSet) -> Result<(), RankError> {
    match s.dim() {
        2 | 3 => Ok(()),
        d => Err(GeometryError::UnsupportedDimension(d).into()),
    }
}

/// A witness of rank `≥ m`, lexicographically least on the lattice.
pub fn rank_at_least_budgeted(
    s: &BoxUnionSet,
    m: usize,
    budget: u64,
) -> Result<Option<RankWitness>, RankError> {
    check_dim(s)?;
    if m == 0 {
        return Err(RankError::HypothesisViolation("rank queries need m >= 1".into()));
    }
    if s.dim() == 2 {
        let planar = Planar::new(s);
        let last = planar.lattice.last();
        for x0 in 0..=last {
            for ye in succ(x0)..=last {
                let pairs = planar.greedy(x0, ye, m);
                if pairs.len() == m {
                    return Ok(Some(RankWitness::Planar(planar.realize(x0, &pairs, ye))));
                }
            }
        }
        return Ok(None);
    }
    let mut search = Spatial::new(s, m, budget);
    Ok(search.dfs(s, &mut Vec::new())?.map(RankWitness::Spatial))
}

pub fn rank_at_least(s: &BoxUnionSet, m: usize) -> Result<Option<RankWitness>, RankError> {
    rank_at_least_budgeted(s, m, DEFAULT_BUDGET)
}

/// `rk(S)` truncated at `cap`, with a witness of the reported value.
pub fn rank_budgeted(s: &BoxUnionSet, cap: usize, budget: u64) -> Result<RankReport, RankError> {
    check_dim(s)?;
    if cap == 0 {
        return Ok(RankReport {
            value: 0,
            capped: true,
            witness: None,
        });
    }
    let (value, witness) = if s.dim() == 2 {
        match Planar::new(s).best(cap) {
            Some(w) => (w.pairs.len(), Some(RankWitness::Planar(w))),
            None => (0, None),
        }
    } else {
        let mut value = 0;
        let mut witness = None;
        for m in 1..=cap {
            match rank_at_least_budgeted(s, m, budget)? {
                Some(w) => {
                    value = m;
                    witness = Some(w);
                }
                None => break,
            }
        }
        (value, witness)
    };
    Ok(RankReport {
        value,
        capped: value == cap,
        witness,
    })
}

pub fn rank(s: &BoxUnionSet, cap: usize) -> Result<RankReport, RankError> {
    rank_budgeted(s, cap, DEFAULT_BUDGET)
}
