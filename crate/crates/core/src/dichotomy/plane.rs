//! The planar dichotomy: the extension loop that adds a pair `{k, n+1}` to
//! a pattern, and the induction that builds any target from `{{0,1}}`.

use super::{
    finish, order_values, search_copy, staircase_in, Certificate, DichotomyOutcome, SearchParams, TraceEntry,
};
use crate::copy::CopyAssignment;
use crate::error::DichotomyError;
use crate::geometry::{find_complement_point, Box, BoxUnionSet, EssentialSimplex};
use crate::pattern::{lemma1_extend, Constructed, IndexMap, Pattern};
use crate::rank::{RankWitness, RankWitness2D};
use crate::rational::Rational;

/// Either a copy of the requested pattern or a finished witness outcome.
enum Obtained {
    Copy(CopyAssignment),
    Witness(DichotomyOutcome),
}

fn check_planar(s: &BoxUnionSet, p: &Pattern, d: &EssentialSimplex) -> Result<(), DichotomyError> {
    if s.dim() != 2 || p.arity() != 2 || d.dim != 2 {
        return Err(DichotomyError::Parameter("the planar dichotomy needs dimension 2".into()));
    }
    Ok(())
}

fn witness_outcome(
    target: &Pattern,
    d: &EssentialSimplex,
    set: BoxUnionSet,
    w: RankWitness2D,
    trace: Vec<TraceEntry>,
) -> DichotomyOutcome {
    DichotomyOutcome {
        target: target.clone(),
        region: *d,
        certificate: Certificate::Witness {
            set,
            witness: RankWitness::Planar(w),
        },
        trace,
    }
}

fn run_loop(
    s: &BoxUnionSet,
    p: &Pattern,
    k: usize,
    m: usize,
    d: &EssentialSimplex,
    obtain: &dyn Fn(&EssentialSimplex) -> Result<Obtained, DichotomyError>,
) -> Result<DichotomyOutcome, DichotomyError> {
    check_planar(s, p, d)?;
    let n = p.size();
    if k > n {
        return Err(DichotomyError::Parameter(format!("need k <= {n}, got {k}")));
    }
    if m == 0 {
        return Err(DichotomyError::Parameter("the rank threshold must be at least 1".into()));
    }
    let target = lemma1_extend(&Constructed::from(p.clone()), k)?.pattern;
    let psi = IndexMap::Psi { k, n };
    let extend = |f: &[Rational], x: Rational, y: Rational| -> Result<CopyAssignment, DichotomyError> {
        let mut values = vec![Rational::zero(); n + 2];
        for (w, &v) in f.iter().enumerate() {
            values[psi.apply(w)?] = v;
        }
        values[k] = x;
        values[n + 1] = y;
        Ok(CopyAssignment::from_values(target.clone(), &values))
    };
    let copy_outcome = |copy, trace| DichotomyOutcome {
        target: target.clone(),
        region: *d,
        certificate: Certificate::Copy { copy },
        trace,
    };
    let mut trace = Vec::new();

    if k == n {
        let f = match obtain(d)? {
            Obtained::Copy(c) => order_values(&c)?,
            Obtained::Witness(o) => return finish(s, o),
        };
        let c = f.last().copied().unwrap_or(d.a);
        let top = Box::cube(c, d.b, 2).map_err(|e| DichotomyError::Precondition(e.to_string()))?;
        return match find_complement_point(s, &top) {
            Some(pt) => finish(s, copy_outcome(extend(&f, pt.coords[0], pt.coords[1])?, trace)),
            None => {
                trace.push(TraceEntry::note(format!("D({c}, {}) lies in S", d.b)));
                let (set, w) = staircase_in(c, d.b, m);
                finish(s, witness_outcome(&target, d, set, w, trace))
            }
        };
    }

    let (mut a_prev, mut b_prev) = (d.a, d.b);
    let mut triples = Vec::with_capacity(m + 2);
    for _ in 0..m + 2 {
        let region = EssentialSimplex::new(a_prev, b_prev, 2).map_err(|e| DichotomyError::Precondition(e.to_string()))?;
        let f = match obtain(&region)? {
            Obtained::Copy(c) => order_values(&c)?,
            Obtained::Witness(o) => return finish(s, o),
        };
        let a = if k == 0 { Rational::midpoint(a_prev, f[0]) } else { f[k - 1] };
        let (b, c) = (f[k], f[n - 1]);
        trace.push(TraceEntry::Triple { a, b, c });
        triples.push((a, b, c));
        let strip = Box::new(vec![(a, b), (c, d.b)]).map_err(|e| DichotomyError::Precondition(e.to_string()))?;
        if let Some(pt) = find_complement_point(s, &strip) {
            return finish(s, copy_outcome(extend(&f, pt.coords[0], pt.coords[1])?, trace));
        }
        (a_prev, b_prev) = (a, b);
    }
    let x0 = a_prev;
    let w = RankWitness2D {
        x0,
        pairs: triples.iter().rev().map(|&(_, b, c)| (b, c)).collect(),
        y_end: d.b,
    };
    let set = BoxUnionSet::new(2, w.rectangles()).map_err(|e| DichotomyError::Precondition(e.to_string()))?;
    finish(s, witness_outcome(&target, d, set, w, trace))
}

/// Looks for a copy of `ψ_k(P) ∪ {{k, n+1}}` in `F ∩ D`. Copies of `P` in the
/// nested regions come from the lattice copy search; a region where the
/// search fails ends the run with `CopySearchFailed`. When `m + 2` rounds
/// find no point of `F` in their strips, the strips form a staircase of
/// rank `≥ m` inside `S`.
pub fn lemma1_loop(
    s: &BoxUnionSet,
    p: &Pattern,
    k: usize,
    m: usize,
    d: &EssentialSimplex,
    params: SearchParams,
) -> Result<DichotomyOutcome, DichotomyError> {
    run_loop(s, p, k, m, d, &|region| search_copy(s, p, region, params).map(Obtained::Copy))
}

/// Removes the block holding the top index `N−1 = n+1`: returns `k` and
/// `(ψ_k)⁻¹` of the remaining blocks.
fn peel(target: &Pattern) -> Result<(Pattern, usize), DichotomyError> {
    let size = target.size();
    let top = size - 1;
    let (bi, _) = target.locate(top).ok_or_else(|| DichotomyError::Precondition("no top index".into()))?;
    let k = target.ordered_blocks()[bi][0];
    let n = size - 2;
    let inv = IndexMap::PsiInverse { k, n };
    let rest = target
        .ordered_blocks()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != bi)
        .map(|(_, b)| inv.apply_all(b))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((Pattern::new(2, rest)?, k))
}

fn obtain_by_induction(
    s: &BoxUnionSet,
    target: &Pattern,
    d: &EssentialSimplex,
    m: usize,
) -> Result<Obtained, DichotomyError> {
    let outcome = theorem1_dichotomy(s, target, d, m)?;
    Ok(match outcome.certificate {
        Certificate::Copy { copy } => Obtained::Copy(copy),
        Certificate::Witness { .. } => Obtained::Witness(outcome),
    })
}

/// Builds `target` from `{{0,1}}` by repeated extension steps and runs the
/// extension loop at every step, each nested copy coming from the same
/// induction one size down. The base case is a single point of `F ∩ D`.
pub fn theorem1_dichotomy(
    s: &BoxUnionSet,
    target: &Pattern,
    d: &EssentialSimplex,
    m: usize,
) -> Result<DichotomyOutcome, DichotomyError> {
    check_planar(s, target, d)?;
    if m == 0 {
        return Err(DichotomyError::Parameter("the rank threshold must be at least 1".into()));
    }
    match target.size() {
        0 => {
            return Ok(DichotomyOutcome {
                target: target.clone(),
                region: *d,
                certificate: Certificate::Copy {
                    copy: CopyAssignment {
                        pattern: target.clone(),
                        points: Vec::new(),
                    },
                },
                trace: Vec::new(),
            })
        }
        2 => {
            let copy = find_complement_point(s, &d.as_box())
                .map(|pt| CopyAssignment {
                    pattern: target.clone(),
                    points: vec![pt],
                });
            let outcome = match copy {
                Some(copy) => DichotomyOutcome {
                    target: target.clone(),
                    region: *d,
                    certificate: Certificate::Copy { copy },
                    trace: Vec::new(),
                },
                None => {
                    let (set, w) = staircase_in(d.a, d.b, m);
                    let trace = vec![TraceEntry::note(format!("D({}, {}) lies in S", d.a, d.b))];
                    witness_outcome(target, d, set, w, trace)
                }
            };
            return finish(s, outcome);
        }
        _ => {}
    }
    let (smaller, k) = peel(target)?;
    let rebuilt = lemma1_extend(&Constructed::from(smaller.clone()), k)?.pattern;
    if &rebuilt != target {
        return Err(DichotomyError::Precondition(format!("peeling {target} gave {smaller} at k = {k}")));
    }
    let mut outcome = run_loop(s, &smaller, k, m, d, &|region| obtain_by_induction(s, &smaller, region, m))?;
    outcome.target = target.clone();
    outcome.trace.insert(0, TraceEntry::note(format!("{target} from {smaller} at k = {k}")));
    finish(s, outcome)
}
