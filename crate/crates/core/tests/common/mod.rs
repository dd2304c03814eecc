//! Random instances shared by the integration tests.
#![allow(dead_code)]

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use simplex_ramsey::geometry::{Box, BoxUnionSet};
use simplex_ramsey::q;
use simplex_ramsey::rank::RankWitness2D;

/// Up to `max_boxes` boxes with endpoints on the `1/den` grid.
pub fn random_boxes(rng: &mut ChaCha8Rng, dim: usize, max_boxes: usize, den: i128) -> BoxUnionSet {
    let n = rng.gen_range(0..=max_boxes);
    let boxes = (0..n)
        .map(|_| {
            if dim == 2 && rng.gen_bool(0.6) {
                // Above the diagonal, so the box alone has rank one.
                let mut c: Vec<i128> = sample(rng, den as usize + 1, 4).into_iter().map(|v| v as i128).collect();
                c.sort();
                return Box::new(vec![(q(c[0], den), q(c[1], den)), (q(c[2], den), q(c[3], den))]).unwrap();
            }
            let iv = (0..dim)
                .map(|_| {
                    let lo = rng.gen_range(0..den);
                    let hi = rng.gen_range(lo + 1..=den);
                    (q(lo, den), q(hi, den))
                })
                .collect();
            Box::new(iv).unwrap()
        })
        .collect();
    BoxUnionSet::new(dim, boxes).unwrap()
}

/// A staircase witness with `n` steps on the `1/den` grid.
pub fn random_staircase(rng: &mut ChaCha8Rng, n: usize, den: i128) -> RankWitness2D {
    let mut c: Vec<i128> = sample(rng, den as usize + 1, 2 * n + 2).into_iter().map(|v| v as i128).collect();
    c.sort();
    let v: Vec<_> = c.iter().map(|&k| q(k, den)).collect();
    RankWitness2D {
        x0: v[0],
        pairs: (0..n).map(|i| (v[2 * i + 1], v[2 * i + 2])).collect(),
        y_end: v[2 * n + 1],
    }
}

/// The rectangles of a random staircase, some shrunk, plus a random box.
pub fn random_staircase_set(rng: &mut ChaCha8Rng, max_steps: usize, den: i128) -> BoxUnionSet {
    let n = rng.gen_range(1..=max_steps);
    let w = random_staircase(rng, n, den);
    let mut boxes: Vec<Box> = w
        .rectangles()
        .into_iter()
        .map(|r| {
            if rng.gen_bool(0.25) {
                let iv = r.intervals();
                let lo = iv[0].0 + (iv[0].1 - iv[0].0) / simplex_ramsey::Rational::from_integer(2);
                Box::new(vec![(lo, iv[0].1), iv[1]]).unwrap()
            } else {
                r
            }
        })
        .collect();
    boxes.extend(random_boxes(rng, 2, 1, den).boxes().iter().cloned());
    BoxUnionSet::new(2, boxes).unwrap()
}

/// Mixes plain random boxes with staircase sets.
pub fn random_planar(rng: &mut ChaCha8Rng, max_boxes: usize, den: i128) -> BoxUnionSet {
    if rng.gen_bool(0.5) {
        random_boxes(rng, 2, max_boxes, den)
    } else {
        random_staircase_set(rng, max_boxes.saturating_sub(1).max(1), den)
    }
}
