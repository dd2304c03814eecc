//! Rank witnesses and their verification.

use serde::{Deserialize, Serialize};

use crate::geometry::{interior_union_contains, Box, BoxUnionSet, SetIndex};
use crate::rational::Rational;

/// `x0 < x_1 ≤ y_1 < x_2 ≤ … < x_n ≤ y_n < y_end` with the staircase
/// `⋃ (x0,x_i) × (y_i,y_end)` inside the set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankWitness2D {
    pub x0: Rational,
    pub pairs: Vec<(Rational, Rational)>,
    pub y_end: Rational,
}

/// `x_1^0 < (x_1^1 ≤ x_2^1 ≤ x_3^1) < … < (x_1^m ≤ x_2^m ≤ x_3^m) < x_3^{m+1}`
/// with the interior of the union of the boxes
/// `[x_1^{i1},x_1^{i1+1}] × [x_2^{i2},x_2^{i2+1}] × [x_3^{i3},x_3^{i3+1}]`,
/// `i1 < i2 < i3 ≤ m`, inside the set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankWitness3D {
    pub start: Rational,
    pub levels: Vec<[Rational; 3]>,
    pub end: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RankWitness {
    Planar(RankWitness2D),
    Spatial(RankWitness3D),
}

impl RankWitness {
    pub fn order(&self) -> usize {
        match self {
            RankWitness::Planar(w) => w.pairs.len(),
            RankWitness::Spatial(w) => w.levels.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub value: usize,
    pub capped: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<RankWitness>,
}

impl RankWitness2D {
    /// The chain `x0, x_1, y_1, …, x_n, y_n, y_end` and whether each step is strict.
    pub fn chain(&self) -> Vec<(Rational, bool)> {
        let mut v = vec![(self.x0, false)];
        for &(x, y) in &self.pairs {
            v.push((x, true));
            v.push((y, false));
        }
        v.push((self.y_end, true));
        v
    }

    pub fn rectangles(&self) -> Vec<Box> {
        self.pairs
            .iter()
            .filter_map(|&(x, y)| Box::new(vec![(self.x0, x), (y, self.y_end)]).ok())
            .collect()
    }
}

impl RankWitness3D {
    pub fn m(&self) -> usize {
        self.levels.len()
    }

    /// `x_axis^i` with the start on axis 0 at level 0 and the end on axis 2
    /// at level `m+1`.
    pub fn value(&self, axis: usize, level: usize) -> Option<Rational> {
        match level {
            0 => (axis == 0).then_some(self.start),
            l if l <= self.m() => Some(self.levels[l - 1][axis]),
            l if l == self.m() + 1 => (axis == 2).then_some(self.end),
            _ => None,
        }
    }

    pub fn chain(&self) -> Vec<(Rational, bool)> {
        let mut v = vec![(self.start, false)];
        for lvl in &self.levels {
            v.push((lvl[0], true));
            v.push((lvl[1], false));
            v.push((lvl[2], false));
        }
        v.push((self.end, true));
        v
    }

    /// Index triples `i1 < i2 < i3 ≤ m`.
    pub fn box_indices(m: usize) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for i1 in 0..=m {
            for i2 in i1 + 1..=m {
                for i3 in i2 + 1..=m {
                    out.push([i1, i2, i3]);
                }
            }
        }
        out
    }

    pub fn closed_boxes(&self) -> Vec<Box> {
        Self::box_indices(self.m())
            .into_iter()
            .filter_map(|[i1, i2, i3]| {
                let iv = vec![
                    (self.value(0, i1)?, self.value(0, i1 + 1)?),
                    (self.value(1, i2)?, self.value(1, i2 + 1)?),
                    (self.value(2, i3)?, self.value(2, i3 + 1)?),
                ];
                Box::new(iv).ok()
            })
            .collect()
    }
}

fn chain_ok(chain: &[(Rational, bool)]) -> bool {
    chain.iter().all(|(v, _)| v.in_unit())
        && chain
            .windows(2)
            .all(|w| if w[1].1 { w[0].0 < w[1].0 } else { w[0].0 <= w[1].0 })
}

pub fn verify_witness2(s: &BoxUnionSet, w: &RankWitness2D) -> bool {
    if s.dim() != 2 || w.pairs.is_empty() || !chain_ok(&w.chain()) {
        return false;
    }
    let extra = w.chain().into_iter().map(|(v, _)| v);
    let index = SetIndex::new(s, extra);
    w.rectangles().iter().all(|r| index.contains_open_box(r))
}

pub fn verify_witness3(s: &BoxUnionSet, w: &RankWitness3D) -> bool {
    s.dim() == 3 && !w.levels.is_empty() && chain_ok(&w.chain()) && interior_union_contains(s, &w.closed_boxes())
}

pub fn verify_witness(s: &BoxUnionSet, w: &RankWitness) -> bool {
    match w {
        RankWitness::Planar(w) => verify_witness2(s, w),
        RankWitness::Spatial(w) => verify_witness3(s, w),
    }
}
