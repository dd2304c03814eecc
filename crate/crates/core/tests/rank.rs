mod common;

use common::{random_boxes, random_planar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use simplex_ramsey::geometry::{Box, BoxUnionSet, EssentialSimplex};
use simplex_ramsey::rank::{brute_force_rank, rank, rank_at_least, verify_witness, RankWitness, RankWitness2D};
use simplex_ramsey::q;

fn staircase(w: &RankWitness2D) -> BoxUnionSet {
    BoxUnionSet::new(2, w.rectangles()).unwrap()
}

#[test]
fn essential_simplex_has_every_rank() {
    for dim in [2, 3] {
        let d = EssentialSimplex::new(q(1, 4), q(3, 4), dim).unwrap();
        let s = BoxUnionSet::new(dim, vec![d.as_box()]).unwrap();
        for m in 1..=4 {
            let w = rank_at_least(&s, m).unwrap().expect("witness");
            assert_eq!(w.order(), m);
            assert!(verify_witness(&s, &w));
        }
    }
}

#[test]
fn empty_set_has_no_planar_witness() {
    for m in 1..=4 {
        assert_eq!(rank_at_least(&BoxUnionSet::empty(2), m).unwrap(), None);
    }
    assert_eq!(rank(&BoxUnionSet::empty(2), 4).unwrap().value, 0);
}

#[test]
fn staircase_of_three_has_rank_three() {
    let w = RankWitness2D {
        x0: q(0, 1),
        pairs: vec![(q(1, 8), q(1, 4)), (q(3, 8), q(1, 2)), (q(5, 8), q(3, 4))],
        y_end: q(1, 1),
    };
    let s = staircase(&w);
    assert!(rank_at_least(&s, 3).unwrap().is_some());
    assert!(rank_at_least(&s, 4).unwrap().is_none());
    assert_eq!(brute_force_rank(&s, 4), 3);
    let r = rank(&s, 4).unwrap();
    assert_eq!((r.value, r.capped), (3, false));
}

#[test]
fn single_box_has_rank_one() {
    let s = BoxUnionSet::new(2, vec![Box::new(vec![(q(0, 1), q(1, 2)), (q(1, 2), q(1, 1))]).unwrap()]).unwrap();
    assert_eq!(brute_force_rank(&s, 4), 1);
    assert_eq!(rank(&s, 4).unwrap().value, 1);
}

#[test]
fn reports_carry_verified_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let s = random_boxes(&mut rng, 2, 4, 16);
        let r = rank(&s, 4).unwrap();
        assert_eq!(r.witness.is_some(), r.value >= 1);
        if let Some(w) = &r.witness {
            assert_eq!(w.order(), r.value);
            assert!(verify_witness(&s, w), "{s:?}");
            assert!(matches!(w, RankWitness::Planar(_)));
        }
    }
}

#[test]
fn rank_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let s = random_boxes(&mut rng, 2, 3, 16);
        let extra = random_boxes(&mut rng, 2, 1, 16);
        let mut t = s.clone();
        for b in extra.boxes() {
            t = t.with_box(b.clone()).unwrap();
        }
        assert!(rank(&s, 4).unwrap().value <= rank(&t, 4).unwrap().value);
    }
}

#[test]
fn planar_search_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let sets: Vec<BoxUnionSet> = (0..120).map(|_| random_planar(&mut rng, 5, 16)).collect();
    sets.par_iter().for_each(|s| {
        assert_eq!(rank(s, 4).unwrap().value, brute_force_rank(s, 4), "{s:?}");
    });
}

#[test]
fn spatial_search_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let sets: Vec<BoxUnionSet> = (0..30).map(|_| random_boxes(&mut rng, 3, 3, 8)).collect();
    sets.par_iter().for_each(|s| {
        assert_eq!(rank(s, 3).unwrap().value, brute_force_rank(s, 3), "{s:?}");
    });
}


