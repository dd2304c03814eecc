//! Essentiality truncated to dyadic essential simplices.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{find_copy_in_complement, CopyAssignment};
use crate::geometry::{BoxUnionSet, EssentialSimplex};
use crate::pattern::Pattern;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RegionOutcome {
    Copy { copy: CopyAssignment },
    None,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionResult {
    pub region: EssentialSimplex,
    #[serde(flatten)]
    pub outcome: RegionOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialityReport {
    pub pattern: Pattern,
    pub depth: u32,
    pub min_gap: Rational,
    pub regions: Vec<RegionResult>,
    pub all_found: bool,
}

impl EssentialityReport {
    pub fn missing(&self) -> impl Iterator<Item = &RegionResult> {
        self.regions
            .iter()
            .filter(|r| !matches!(r.outcome, RegionOutcome::Copy { .. }))
    }
}

/// Regions `D_{a,b}` with `a = i/2^d < b = j/2^d` and `b − a ≥ min_gap`,
/// ordered by `a` then `b`.
pub fn dyadic_regions(dim: usize, depth: u32, min_gap: Rational) -> Vec<EssentialSimplex> {
    let den = 1i128 << depth;
    let mut out = Vec::new();
    for i in 0..den {
        for j in (i + 1)..=den {
            let (a, b) = (Rational::new(i, den), Rational::new(j, den));
            if b - a >= min_gap {
                out.push(EssentialSimplex::new(a, b, dim).expect("0 <= a < b <= 1"));
            }
        }
    }
    out
}

/// Searches every dyadic region for a copy of `P` in `Δⁿ ∖ S`. Regions run
/// in parallel; the report lists them in [`dyadic_regions`] order.
pub fn essential_at_depth(
    p: &Pattern,
    s: &BoxUnionSet,
    depth: u32,
    min_gap: Rational,
    q: usize,
    budget: u64,
) -> EssentialityReport {
    let regions: Vec<RegionResult> = dyadic_regions(s.dim(), depth, min_gap)
        .into_par_iter()
        .map(|region| {
            let outcome = match find_copy_in_complement(p, s, &region, q, budget) {
                Ok(Some(copy)) => RegionOutcome::Copy { copy },
                Ok(None) => RegionOutcome::None,
                Err(_) => RegionOutcome::BudgetExceeded,
            };
            RegionResult { region, outcome }
        })
        .collect();
    let all_found = regions
        .iter()
        .all(|r| matches!(r.outcome, RegionOutcome::Copy { .. }));
    EssentialityReport {
        pattern: p.clone(),
        depth,
        min_gap,
        regions,
        all_found,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Box;
    use crate::rational::q;

    fn pat(arity: usize, blocks: &[&[usize]]) -> Pattern {
        Pattern::new(arity, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn region_enumeration() {
        let r = dyadic_regions(2, 2, q(1, 4));
        assert_eq!(r.len(), 10);
        assert_eq!((r[0].a, r[0].b), (q(0, 1), q(1, 4)));
        assert_eq!(dyadic_regions(2, 3, q(1, 8)).len(), 36);
    }

    #[test]
    fn empty_set_is_essential() {
        let rep = essential_at_depth(&pat(2, &[&[0, 1]]), &BoxUnionSet::empty(2), 3, q(1, 8), 2, 10_000);
        assert!(rep.all_found);
    }

    #[test]
    fn small_box_leaves_copies() {
        let s = BoxUnionSet::new(2, vec![Box::new(vec![(q(1, 8), q(3, 16)), (q(5, 8), q(11, 16))]).unwrap()]).unwrap();
        let p = pat(2, &[&[0, 2], &[1, 3]]);
        assert!(essential_at_depth(&p, &s, 2, q(1, 4), 4, 100_000).all_found);
    }

    #[test]
    fn covered_region_is_listed() {
        let d = EssentialSimplex::new(q(1, 4), q(1, 2), 2).unwrap();
        let s = BoxUnionSet::new(2, vec![d.as_box()]).unwrap();
        let rep = essential_at_depth(&pat(2, &[&[0, 1]]), &s, 2, q(1, 4), 2, 100_000);
        assert!(!rep.all_found);
        assert!(rep.missing().any(|r| r.region == d));
    }
}
