//! Constructive dichotomies: each run ends either in a copy of the target
//! pattern inside `F ∩ D`, with `F` the complement of the given box union
//! `S`, or in a set of rank at least the threshold contained in `S`
//! together with its witness.

mod plane;
mod space;

use serde::{Deserialize, Serialize};

use crate::copy::{find_copy_in_complement, verify_copy, CopyAssignment};
use crate::error::DichotomyError;
use crate::geometry::{interior_union_contains, Box, BoxUnionSet, EssentialSimplex, Point};
use crate::pattern::Pattern;
use crate::rank::{verify_witness, RankWitness, RankWitness2D};
use crate::rational::Rational;

pub use plane::{lemma1_loop, theorem1_dichotomy};
pub use space::{
    claim2_set, claim3_step, corollary1_augment, lemma5_target, theorem3_driver, theorem3_target, Claim2Set,
};

/// Copy search settings for the sub-searches of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    /// Slots per open cell and coordinate in the lattice copy search. It is
    /// raised to `⌈|P|/n⌉` when smaller, so one cell can hold a whole copy
    /// and the sub-searches are exact.
    pub q: usize,
    /// Placement budget of a single copy search.
    pub budget: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams { q: 2, budget: 2_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceEntry {
    /// A nested interval triple read off a copy.
    Triple { a: Rational, b: Rational, c: Rational },
    /// A closed-form index compared with the index found by provenance.
    IndexCheck {
        what: String,
        provenance: Vec<usize>,
        closed_form: Option<Vec<usize>>,
        agrees: bool,
    },
    Note { text: String },
}

impl TraceEntry {
    pub fn note(text: impl Into<String>) -> Self {
        TraceEntry::Note { text: text.into() }
    }

    pub fn index_check(what: impl Into<String>, provenance: Vec<usize>, closed_form: Option<Vec<usize>>) -> Self {
        TraceEntry::IndexCheck {
            what: what.into(),
            agrees: closed_form.as_ref() == Some(&provenance),
            provenance,
            closed_form,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum Certificate {
    /// A copy of the target in `F ∩ D`.
    Copy { copy: CopyAssignment },
    /// A set contained in `S` and a witness that its rank reaches the threshold.
    Witness { set: BoxUnionSet, witness: RankWitness },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyOutcome {
    pub target: Pattern,
    pub region: EssentialSimplex,
    #[serde(flatten)]
    pub certificate: Certificate,
    pub trace: Vec<TraceEntry>,
}

impl DichotomyOutcome {
    pub fn is_copy(&self) -> bool {
        matches!(self.certificate, Certificate::Copy { .. })
    }
}

/// Membership in `F = Δⁿ ∖ S`.
pub fn in_complement(s: &BoxUnionSet, p: &Point) -> bool {
    p.in_simplex() && !s.contains_point(p)
}

/// `B ∩ Δⁿ ⊆ S` for an open box `B`.
pub fn box_inside(s: &BoxUnionSet, b: &Box) -> bool {
    interior_union_contains(s, std::slice::from_ref(b))
}

/// Re-checks a certificate: the copy against `F ∩ D` by exact membership,
/// or the witness against both the constructed set and `S`, with the set
/// inside `S`.
pub fn verify_outcome(s: &BoxUnionSet, outcome: &DichotomyOutcome) -> bool {
    match &outcome.certificate {
        Certificate::Copy { copy } => {
            copy.pattern == outcome.target && verify_copy(copy, &outcome.region, |p| in_complement(s, p))
        }
        Certificate::Witness { set, witness } => {
            set.dim() == s.dim()
                && set.boxes().iter().all(|b| box_inside(s, b))
                && verify_witness(set, witness)
                && verify_witness(s, witness)
        }
    }
}

fn finish(s: &BoxUnionSet, outcome: DichotomyOutcome) -> Result<DichotomyOutcome, DichotomyError> {
    if verify_outcome(s, &outcome) {
        Ok(outcome)
    } else {
        Err(DichotomyError::Unverified(format!("{:?}", outcome.certificate)))
    }
}

fn search_copy(
    s: &BoxUnionSet,
    p: &Pattern,
    d: &EssentialSimplex,
    params: SearchParams,
) -> Result<CopyAssignment, DichotomyError> {
    let q = params.q.max(p.size().div_ceil(p.arity().max(1)));
    match find_copy_in_complement(p, s, d, q, params.budget) {
        Ok(Some(c)) => Ok(c),
        Ok(None) => Err(DichotomyError::CopySearchFailed(format!("no copy of {p} in D({}, {})", d.a, d.b))),
        Err(e) => Err(DichotomyError::CopySearchFailed(format!("{p} in D({}, {}): {e}", d.a, d.b))),
    }
}

/// A staircase with `m` steps inside the open triangle `D_{c,b}`.
fn staircase_in(c: Rational, b: Rational, m: usize) -> (BoxUnionSet, RankWitness2D) {
    let parts = 2 * m as i128 + 1;
    let v = |t: usize| Rational::lerp_step(c, b, t as i128, parts);
    let w = RankWitness2D {
        x0: c,
        pairs: (0..m).map(|i| (v(2 * i + 1), v(2 * i + 2))).collect(),
        y_end: b,
    };
    let set = BoxUnionSet::new(2, vec![Box::cube(c, b, 2).expect("c < b")]).expect("planar");
    (set, w)
}

fn order_values(c: &CopyAssignment) -> Result<Vec<Rational>, DichotomyError> {
    c.order_function()
        .ok_or_else(|| DichotomyError::Unverified(format!("copy of {} has no order function", c.pattern)))
}
