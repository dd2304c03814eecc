//! Property tests for the exact arithmetic, pattern algebra, rank and
//! homeomorphism layers.

use proptest::prelude::*;

use simplex_ramsey::copy::{find_copy_in_complement, implication_holds, verify_copy, CopyAssignment};
use simplex_ramsey::geometry::{Box, BoxUnionSet, EssentialSimplex};
use simplex_ramsey::homeo::PLHomeo;
use simplex_ramsey::pattern::{chain, insert, lemma1_extend, oplus, Constructed, Pattern};
use simplex_ramsey::rank::{rank, verify_witness2, RankWitness};
use simplex_ramsey::{q, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i128..1000, 1i128..1000).prop_map(|(n, d)| q(n, d))
}

fn pattern(arity: usize, max_blocks: usize) -> impl Strategy<Value = Pattern> {
    (1..=max_blocks)
        .prop_flat_map(move |b| Just((0..arity * b).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(move |idx| Pattern::new(arity, idx.chunks(arity).map(|c| c.to_vec()).collect()).unwrap())
}

fn grid_box(dim: usize, den: i128) -> impl Strategy<Value = Box> {
    proptest::collection::vec((0..den, 1..=den), dim).prop_map(move |iv| {
        let iv = iv
            .into_iter()
            .map(|(a, w)| {
                let hi = (a + w).min(den).max(a + 1);
                (q(a, den), q(hi, den))
            })
            .collect();
        Box::new(iv).unwrap()
    })
}

fn planar_set() -> impl Strategy<Value = BoxUnionSet> {
    proptest::collection::vec(grid_box(2, 16), 0..=4).prop_map(|b| BoxUnionSet::new(2, b).unwrap())
}

fn homeo() -> impl Strategy<Value = PLHomeo> {
    (proptest::sample::subsequence((1..32).collect::<Vec<i128>>(), 1..=3))
        .prop_flat_map(|src| {
            let k = src.len();
            (Just(src), proptest::sample::subsequence((1..32).collect::<Vec<i128>>(), k))
        })
        .prop_map(|(src, dst)| {
            let f = |v: Vec<i128>| v.into_iter().map(|x| q(x, 32)).collect::<Vec<_>>();
            PLHomeo::through_points(&f(src), &f(dst)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_text_round_trips(r in rational()) {
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        let j = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&j).unwrap(), r);
    }

    #[test]
    fn pattern_text_round_trips(p in pattern(3, 4)) {
        prop_assert_eq!(p.to_string().parse::<Pattern>().unwrap(), p);
    }

    #[test]
    fn constructions_keep_sound_provenance(p in pattern(2, 3), r in pattern(2, 2), a in 0usize..8, b in 0usize..8, l in 1usize..4) {
        let n = p.size();
        let m = r.size();
        let base = Constructed::atom(p.clone(), "P");
        let other = Constructed::atom(r.clone(), "Q");
        let j1 = a % n;
        let j2 = j1 + 1 + b % (n - j1);
        let sum = oplus(&base, j1, j2, &other, a % (m + 1)).unwrap();
        prop_assert!(sum.provenance_is_sound());
        prop_assert_eq!(sum.pattern.size(), n + m);
        let ins = insert(&base, b % (n + 1), &other).unwrap();
        prop_assert!(ins.provenance_is_sound());
        let ext = lemma1_extend(&base, a % (n + 1)).unwrap();
        prop_assert!(ext.provenance_is_sound());
        prop_assert_eq!(ext.pattern.size(), n + 2);
        let ch = chain(&p, j1, j2, l).unwrap();
        prop_assert!(ch.provenance_is_sound());
        prop_assert_eq!(ch.pattern.size(), l * n);
    }

    #[test]
    fn realized_values_are_copies(p in pattern(2, 3)) {
        let n = p.size() as i128;
        let values: Vec<Rational> = (0..n).map(|t| q(t + 1, n + 1)).collect();
        let c = CopyAssignment::from_values(p.clone(), &values);
        let full = EssentialSimplex::full(2);
        prop_assert!(implication_holds(&c) && verify_copy(&c, &full, |_| true));
        let found = find_copy_in_complement(&p, &BoxUnionSet::empty(2), &full, p.size().div_ceil(2), 1_000_000).unwrap();
        prop_assert!(found.is_some_and(|f| implication_holds(&f)));
    }

    #[test]
    fn rank_is_monotone_and_witnessed(s in planar_set(), extra in grid_box(2, 16)) {
        let r = rank(&s, 4).unwrap();
        let bigger = s.with_box(extra).unwrap();
        let r2 = rank(&bigger, 4).unwrap();
        prop_assert!(r2.value >= r.value);
        if let Some(RankWitness::Planar(w)) = &r.witness {
            prop_assert!(verify_witness2(&s, w));
            prop_assert_eq!(w.pairs.len(), r.value);
        }
    }

    #[test]
    fn homeomorphisms_invert_and_preserve_rank(g in homeo(), s in planar_set()) {
        let id = g.compose(&g.inverse());
        for t in 0..=16 {
            prop_assert_eq!(id.apply(q(t, 16)), q(t, 16));
        }
        prop_assert_eq!(rank(&g.apply_set(&s), 3).unwrap().value, rank(&s, 3).unwrap().value);
    }
}
