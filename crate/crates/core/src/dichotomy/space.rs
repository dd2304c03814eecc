//! The three-dimensional dichotomy for `{{0,2,4},{1,3,5}}`: the augmentation
//! step through nested box families, the chain ladder, the chain-derived set
//! and the final extension.

use super::{
    box_inside, finish, order_values, search_copy, Certificate, DichotomyOutcome, SearchParams, TraceEntry,
};
use crate::copy::CopyAssignment;
use crate::error::DichotomyError;
use crate::geometry::{find_complement_point, Box, BoxUnionSet, EssentialSimplex, Point};
use crate::pattern::{chain, insert, oplus, Constructed, IndexMap, Pattern};
use crate::rank::{lemma6_witness, rank_at_least, verify_witness3, RankWitness, RankWitness3D};
use crate::rational::Rational;

fn single_triple() -> Pattern {
    Pattern::new(3, vec![vec![0, 1, 2]]).expect("valid")
}

fn geometry_err(e: impl std::fmt::Display) -> DichotomyError {
    DichotomyError::Precondition(e.to_string())
}

fn check_spatial(s: &BoxUnionSet, d: &EssentialSimplex) -> Result<(), DichotomyError> {
    if s.dim() != 3 || d.dim != 3 {
        return Err(DichotomyError::Parameter("the spatial dichotomy needs dimension 3".into()));
    }
    Ok(())
}

/// `Φ_{(j,1),(k,1)}(P) ∪ {(j, k+1, n+2)}`.
pub fn lemma5_target(p: &Pattern, j: usize, k: usize) -> Result<Pattern, DichotomyError> {
    let n = p.size();
    let mut blocks = p.map_blocks(&IndexMap::Phi {
        j1: j,
        l1: 1,
        j2: k,
        l2: 1,
    })?;
    blocks.push(vec![j, k + 1, n + 2]);
    Ok(Pattern::new(3, blocks)?)
}

/// `{{0,2,4},{1,3,5}}`.
pub fn theorem3_target() -> Pattern {
    Pattern::new(3, vec![vec![0, 2, 4], vec![1, 3, 5]]).expect("valid")
}

fn relabel(c: Constructed, prefix: &str) -> Constructed {
    let mut c = c;
    for s in &mut c.stages {
        s.label = format!("{prefix}{}", s.label);
    }
    c
}

/// The index map of `part` into `whole`, matching stages by label.
fn embed_via_labels(part: &Constructed, whole: &Constructed) -> Result<Vec<usize>, DichotomyError> {
    let mut out = vec![usize::MAX; part.pattern.size()];
    for st in &part.stages {
        let host = whole
            .stages
            .iter()
            .find(|w| w.label == st.label)
            .ok_or_else(|| DichotomyError::Precondition(format!("stage {} missing", st.label)))?;
        for (t, &x) in st.image.iter().enumerate() {
            out[x] = host.image[t];
        }
    }
    if out.contains(&usize::MAX) {
        return Err(DichotomyError::Precondition("partial stage embedding".into()));
    }
    Ok(out)
}

/// Nested family read off one copy: `S = ⋃ (a_i,b_i)² × (c_i,d)`.
struct Family {
    a: Vec<Rational>,
    b: Vec<Rational>,
    c: Vec<Rational>,
    d: Rational,
}

enum Branch {
    /// A point of `F` in the box of family member `i`.
    Point(usize, Point),
    Witness(BoxUnionSet, RankWitness3D),
}

fn family_branch(s: &BoxUnionSet, fam: &Family, trace: &mut Vec<TraceEntry>) -> Result<Branch, DichotomyError> {
    for i in 0..fam.a.len() {
        trace.push(TraceEntry::Triple {
            a: fam.a[i],
            b: fam.b[i],
            c: fam.c[i],
        });
    }
    for i in 0..fam.a.len() {
        let iv = vec![(fam.a[i], fam.b[i]), (fam.a[i], fam.b[i]), (fam.c[i], fam.d)];
        let b = Box::new(iv).map_err(geometry_err)?;
        if let Some(pt) = find_complement_point(s, &b) {
            return Ok(Branch::Point(i, pt));
        }
    }
    let (set, w) = lemma6_witness(&fam.a, &fam.b, &fam.c, fam.d)?;
    Ok(Branch::Witness(set, w))
}

fn spatial_witness(target: &Pattern, d: &EssentialSimplex, set: BoxUnionSet, w: RankWitness3D, trace: Vec<TraceEntry>) -> DichotomyOutcome {
    DichotomyOutcome {
        target: target.clone(),
        region: *d,
        certificate: Certificate::Witness {
            set,
            witness: RankWitness::Spatial(w),
        },
        trace,
    }
}

fn copy_outcome(target: &Pattern, d: &EssentialSimplex, values: &[Rational], trace: Vec<TraceEntry>) -> DichotomyOutcome {
    DichotomyOutcome {
        target: target.clone(),
        region: *d,
        certificate: Certificate::Copy {
            copy: CopyAssignment::from_values(target.clone(), values),
        },
        trace,
    }
}

/// Looks for a copy of `Φ_{(k,2)}(P) ∪ {(k,k+1,n+2)}` in `F ∩ D`. Builds
/// `K_1 = P`, `K_{i+1}` = `P` inserted into `K_i` at `ik`, finds one copy of
/// `K_m`, and reads the nested family from the copies of `P` inside it.
/// A point of `F` in a family box extends the matching copy of `P`; no
/// such point leaves the family, of rank `≥ m`, inside `S`.
pub fn corollary1_augment(
    s: &BoxUnionSet,
    p: &Pattern,
    k: usize,
    m: usize,
    d: &EssentialSimplex,
    params: SearchParams,
) -> Result<DichotomyOutcome, DichotomyError> {
    check_spatial(s, d)?;
    let n = p.size();
    if p.arity() != 3 || k >= n || m == 0 {
        return Err(DichotomyError::Parameter(format!("need arity 3, k < {n} and m >= 1, got k = {k}, m = {m}")));
    }
    let mut blocks = p.map_blocks(&IndexMap::PhiSingle { j: k, l: 2 })?;
    blocks.push(vec![k, k + 1, n + 2]);
    let target = Pattern::new(3, blocks)?;

    let mut kk = Constructed::atom(p.clone(), "copy 1");
    for i in 1..m {
        kk = insert(&kk, i * k, &Constructed::atom(p.clone(), format!("copy {}", i + 1)))?;
    }
    let mut trace = vec![TraceEntry::note(format!("K_{m} has size {}", kk.pattern.size()))];
    for i in 1..=m {
        let img = &kk.stage(i).expect("m stages").image;
        if k > 0 {
            trace.push(TraceEntry::index_check(format!("a_{i}"), vec![img[k - 1]], Some(vec![i * k - 1])));
        }
        let b_closed = (i * k + n * (m - i)).checked_sub(1).map(|v| vec![v]);
        trace.push(TraceEntry::index_check(format!("b_{i}"), vec![img[k]], b_closed));
        let c_closed = ((m - i + 1) * n + (i - 1) * k).checked_sub(1).map(|v| vec![v]);
        trace.push(TraceEntry::index_check(format!("c_{i}"), vec![img[n - 1]], c_closed));
    }
    let f = order_values(&search_copy(s, &kk.pattern, d, params)?)?;
    let g: Vec<Vec<Rational>> = (1..=m)
        .map(|i| kk.stage(i).expect("m stages").image.iter().map(|&x| f[x]).collect())
        .collect();
    let b: Vec<Rational> = g.iter().map(|gi| gi[k]).collect();
    let a: Vec<Rational> = if k > 0 {
        g.iter().map(|gi| gi[k - 1]).collect()
    } else {
        (1..=m).map(|i| Rational::lerp_step(d.a, b[m - 1], i as i128, m as i128 + 1)).collect()
    };
    let fam = Family {
        a,
        b,
        c: g.iter().map(|gi| gi[n - 1]).collect(),
        d: d.b,
    };
    match family_branch(s, &fam, &mut trace)? {
        Branch::Point(i, pt) => {
            let phi = IndexMap::PhiSingle { j: k, l: 2 };
            let mut values = vec![Rational::zero(); n + 3];
            for (v, &x) in g[i].iter().enumerate() {
                values[phi.apply(v)?] = x;
            }
            values[k] = pt.coords[0];
            values[k + 1] = pt.coords[1];
            values[n + 2] = pt.coords[2];
            finish(s, copy_outcome(&target, d, &values, trace))
        }
        Branch::Witness(set, w) => finish(s, spatial_witness(&target, d, set, w, trace)),
    }
}

/// One rung of the chain ladder: a copy of `(Ch^{l+1}_{1,2}(P))^{l+2}_{l} ⊕ Q_k`
/// with `P = {{0,1,2}}`, from one copy of the pattern `K_m` assembled out of
/// `m` copies of `P' = (Ch^l_{1,2}(P))^{3l}_{l} ⊕ Q_n`, or a nested family of
/// rank `≥ m` inside `S`.
pub fn claim3_step(
    s: &BoxUnionSet,
    l: usize,
    qp: &Pattern,
    k: usize,
    m: usize,
    d: &EssentialSimplex,
    params: SearchParams,
) -> Result<DichotomyOutcome, DichotomyError> {
    check_spatial(s, d)?;
    let n = qp.size();
    if qp.arity() != 3 || k > n || l == 0 || m == 0 {
        return Err(DichotomyError::Parameter(format!("need arity 3, k <= {n}, l >= 1, m >= 1")));
    }
    let p = single_triple();
    let target = oplus(&chain(&p, 1, 2, l + 1)?, l, l + 2, &Constructed::from(qp.clone()), k)?.pattern;
    let piece = |i: usize| -> Result<(Constructed, Constructed), DichotomyError> {
        let ch = relabel(chain(&p, 1, 2, l)?, &format!("copy {i}: "));
        let q = Constructed::atom(qp.clone(), format!("copy {i}: Q"));
        Ok((ch, q))
    };
    let mut parts = Vec::with_capacity(m);
    let (ch, q) = piece(1)?;
    let first = oplus(&ch, l, 3 * l, &q, n)?;
    parts.push(first.clone());
    let mut kk = first;
    let mut trace = Vec::new();
    let domain: Vec<usize> = (0..parts[0].pattern.size()).collect();
    for i in 2..=m {
        let (ch, q) = piece(i)?;
        parts.push(oplus(&ch, l, 3 * l, &q, n)?);
        let glued = oplus(&ch, l - 1, l + 1, &kk, (i - 1) * (l + k))?;
        kk = insert(&glued, i * l + (i - 1) * k, &q)?;
        let fresh = IndexMap::Phi {
            j1: l - 1,
            l1: ((i - 1) * (l + k)) as i64,
            j2: l + n + 1,
            l2: ((i - 1) * (2 * l + n - k)) as i64,
        };
        let img = embed_via_labels(&parts[i - 1], &kk)?;
        trace.push(TraceEntry::index_check(format!("copy {i} of P' in K_{i}"), img, fresh.apply_all(&domain).ok()));
    }
    trace.insert(0, TraceEntry::note(format!("K_{m} has size {}", kk.pattern.size())));
    let mut images = Vec::with_capacity(m);
    for (idx, part) in parts.iter().enumerate() {
        let i = idx + 1;
        let img = embed_via_labels(part, &kk)?;
        let closed = if i == 1 {
            IndexMap::Phi {
                j1: 0,
                l1: ((l - 1) * (m - 1)) as i64,
                j2: l + k,
                l2: ((n + 2) * (m - 1)) as i64,
            }
        } else {
            IndexMap::Phi {
                j1: l - 1,
                l1: ((i - 1) * (l + k)) as i64,
                j2: l + n + 1,
                l2: ((i - 1) * (2 * l + n - k)) as i64,
            }
            .then(IndexMap::Translate { k: (m - i) * (l - 1) })
        };
        trace.push(TraceEntry::index_check(format!("copy {i} of P' in K_{m}"), img.clone(), closed.apply_all(&domain).ok()));
        images.push(img);
    }
    let f = order_values(&search_copy(s, &kk.pattern, d, params)?)?;
    let g: Vec<Vec<Rational>> = images.iter().map(|img| img.iter().map(|&x| f[x]).collect()).collect();
    let fam = Family {
        a: g.iter().map(|gi| gi[l + k - 1]).collect(),
        b: g.iter().map(|gi| gi[l + k]).collect(),
        c: g.iter().map(|gi| gi[l + n]).collect(),
        d: g[0][l + n + 1],
    };
    match family_branch(s, &fam, &mut trace)? {
        Branch::Point(i, pt) => {
            let phi = IndexMap::Phi {
                j1: l + k,
                l1: 2,
                j2: l + n + 1,
                l2: 1,
            };
            let mut blocks = parts[i].pattern.map_blocks(&phi)?;
            blocks.push(vec![l + k, l + k + 1, l + n + 3]);
            let extended = Pattern::new(3, blocks)?;
            if extended != target {
                return Err(DichotomyError::Precondition(format!("extension gives {extended}, expected {target}")));
            }
            let mut values = vec![Rational::zero(); target.size()];
            for (v, &x) in g[i].iter().enumerate() {
                values[phi.apply(v)?] = x;
            }
            values[l + k] = pt.coords[0];
            values[l + k + 1] = pt.coords[1];
            values[l + n + 3] = pt.coords[2];
            finish(s, copy_outcome(&target, d, &values, trace))
        }
        Branch::Witness(set, w) => finish(s, spatial_witness(&target, d, set, w, trace)),
    }
}

/// The chain-derived set and, when it verifies, its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim2Set {
    /// `C_i = (f_i(j−1), f_i(j)) × (f_i(k−1), f_i(k)) × (f_i(n−1), b)` for the
    /// copies `f_i` of `P` inside the chain, `i = 1..m`.
    pub boxes: Vec<Box>,
    pub set: BoxUnionSet,
    /// Rank `≥ ⌊m/2⌋`, present when it verifies against `set`.
    pub witness: Option<RankWitness3D>,
    pub trace: Vec<TraceEntry>,
    /// Stage values `f_i` in stage order.
    pub stages: Vec<Vec<Rational>>,
}

/// Builds the set of the copies of `P` inside a copy of `Ch^m_{j,k}(P)` and
/// the witness `x0 = f_m(j−1)`, level 1 from copy `m`, level `i ≥ 2` from
/// copy `m − 2(i−1)`, each as `(f(j), f(k−1), f(n−1))`, ending at `b`.
pub fn claim2_set(
    chain_copy: &CopyAssignment,
    p: &Pattern,
    j: usize,
    k: usize,
    m: usize,
    b: Rational,
) -> Result<Claim2Set, DichotomyError> {
    let n = p.size();
    if p.arity() != 3 || !(0 < j && j < k && k < n) || m == 0 {
        return Err(DichotomyError::Parameter(format!("need arity 3, 0 < j < k < n, m >= 1, got j = {j}, k = {k}")));
    }
    let ch = chain(p, j, k, m)?;
    if chain_copy.pattern != ch.pattern {
        return Err(DichotomyError::Precondition(format!("copy is of {}, not of the chain {}", chain_copy.pattern, ch.pattern)));
    }
    let f = chain_copy
        .order_function()
        .ok_or_else(|| DichotomyError::Precondition("chain copy has no increasing order function".into()))?;
    if f.iter().any(|&v| v >= b) || f.iter().any(|v| !v.in_unit()) || b > Rational::one() {
        return Err(DichotomyError::Precondition(format!("need every copy value below {b} inside [0,1]")));
    }
    let stages: Vec<Vec<Rational>> = (1..=m)
        .map(|i| ch.stage(i).expect("m stages").image.iter().map(|&x| f[x]).collect())
        .collect();
    let boxes = stages
        .iter()
        .map(|g| Box::new(vec![(g[j - 1], g[j]), (g[k - 1], g[k]), (g[n - 1], b)]))
        .collect::<Result<Vec<_>, _>>()
        .map_err(geometry_err)?;
    let set = BoxUnionSet::new(3, boxes.clone()).map_err(geometry_err)?;
    let mut trace = Vec::new();
    let levels = m / 2;
    let img = |stage: usize, x: usize| ch.stage(stage).expect("stage").image[x];
    for i in 1..levels {
        let (z, x) = (img(m - 2 * i + 2, n - 1), img(m - 2 * i, j));
        let z_closed = (2 * i - 1) * n + k + j * (m - 2 * i + 1) - j - 1;
        let x_closed = (2 * i - 1) * n + k + j + j * (m - 2 * i - 1);
        trace.push(TraceEntry::index_check(format!("z_{i}, x_{}", i + 1), vec![z, x], Some(vec![z_closed, x_closed])));
    }
    let witness = if levels == 0 {
        trace.push(TraceEntry::note("chain too short for a witness"));
        None
    } else {
        let level = |stage: usize| {
            let g = &stages[stage - 1];
            [g[j], g[k - 1], g[n - 1]]
        };
        let w = RankWitness3D {
            start: stages[m - 1][j - 1],
            levels: (1..=levels).map(|i| level(m - 2 * (i - 1))).collect(),
            end: b,
        };
        let chain_values = w.chain();
        let bad = chain_values.windows(2).position(|s| if s[1].1 { s[0].0 >= s[1].0 } else { s[0].0 > s[1].0 });
        if let Some(pos) = bad {
            trace.push(TraceEntry::note(format!(
                "witness order fails between chain entries {pos} and {}: {} vs {}",
                pos + 1,
                chain_values[pos].0,
                chain_values[pos + 1].0
            )));
            None
        } else if verify_witness3(&set, &w) {
            Some(w)
        } else {
            trace.push(TraceEntry::note("witness boxes leave the chain set"));
            None
        }
    };
    Ok(Claim2Set {
        boxes,
        set,
        witness,
        trace,
        stages,
    })
}

/// Runs the dichotomy for `{{0,2,4},{1,3,5}}` on `D`. A copy of the chain
/// `Ch^l_{1,2}({{0,1,2}})`, `l = min(2m, l_max)`, comes from the lattice
/// search or, failing that, from the last rung of the chain ladder; then a
/// point of `F` in one of the chain boxes extends its copy of `{{0,1,2}}` to
/// the target, and otherwise the chain set of rank `≥ ⌊l/2⌋` lies in `S`.
pub fn theorem3_driver(
    s: &BoxUnionSet,
    d: &EssentialSimplex,
    m: usize,
    l_max: usize,
    params: SearchParams,
) -> Result<DichotomyOutcome, DichotomyError> {
    check_spatial(s, d)?;
    if m == 0 || l_max < 2 {
        return Err(DichotomyError::Parameter("need m >= 1 and a chain length of at least 2".into()));
    }
    let p = single_triple();
    let target = theorem3_target();
    if lemma5_target(&p, 1, 2)? != target {
        return Err(DichotomyError::Precondition("extension of {{0,1,2}} at 1, 2 differs from the target".into()));
    }
    let mut trace = vec![TraceEntry::note(format!("{target} is the extension of {p} at j = 1, k = 2"))];
    let l = (2 * m).min(l_max);
    let ch = chain(&p, 1, 2, l)?;
    let chain_copy = match search_copy(s, &ch.pattern, d, params) {
        Ok(c) => c,
        Err(DichotomyError::CopySearchFailed(why)) => {
            trace.push(TraceEntry::note(format!("direct chain search failed ({why}), climbing the ladder")));
            if find_complement_point(s, &d.as_box()).is_none() {
                let set = BoxUnionSet::new(3, vec![d.as_box()]).map_err(geometry_err)?;
                let w = match rank_at_least(&set, m)? {
                    Some(RankWitness::Spatial(w)) => w,
                    _ => return Err(DichotomyError::Unverified("no witness inside a covered region".into())),
                };
                trace.push(TraceEntry::note("the region lies in S"));
                return finish(s, spatial_witness(&target, d, set, w, trace));
            }
            let rung = claim3_step(s, l - 1, &Pattern::empty(3), 0, m, d, params)?;
            trace.extend(rung.trace.iter().cloned());
            match rung.certificate {
                Certificate::Copy { copy } => copy,
                Certificate::Witness { set, witness } => {
                    return finish(
                        s,
                        DichotomyOutcome {
                            target: target.clone(),
                            region: *d,
                            certificate: Certificate::Witness { set, witness },
                            trace,
                        },
                    )
                }
            }
        }
        Err(e) => return Err(e),
    };
    let c2 = claim2_set(&chain_copy, &p, 1, 2, l, d.b)?;
    trace.extend(c2.trace.iter().cloned());
    for (i, b) in c2.boxes.iter().enumerate() {
        if let Some(pt) = find_complement_point(s, b) {
            let g = &c2.stages[i];
            let values = [g[0], pt.coords[0], g[1], pt.coords[1], g[2], pt.coords[2]];
            trace.push(TraceEntry::note(format!("point of F in the box of chain copy {}", i + 1)));
            return finish(s, copy_outcome(&target, d, &values, trace));
        }
    }
    if !c2.boxes.iter().all(|b| box_inside(s, b)) {
        return Err(DichotomyError::Unverified("chain boxes without points of F are not inside S".into()));
    }
    match c2.witness {
        Some(w) => finish(s, spatial_witness(&target, d, c2.set, w, trace)),
        None => Err(DichotomyError::Unverified(format!("chain set of length {l} has no verified witness"))),
    }
}
