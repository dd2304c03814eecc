//! Gluing constructions with per-stage provenance.
//!
//! Every constructed pattern carries the list of component patterns it was
//! glued from together with the index map embedding each component into
//! the result. Composing a copy of the result with a stage map yields a copy
//! of that component, which is how the individual copies inside a chain are
//! recovered.

use serde::{Deserialize, Serialize};

use super::{IndexMap, Pattern};
use crate::error::PatternError;

/// One component of a constructed pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub label: String,
    pub component: Pattern,
    pub map: IndexMap,
    /// `map` evaluated on `[component.size()]`.
    pub image: Vec<usize>,
}

impl Stage {
    fn new(label: String, component: Pattern, map: IndexMap) -> Result<Self, PatternError> {
        let image = map.apply_all(&(0..component.size()).collect::<Vec<_>>())?;
        Ok(Stage {
            label,
            component,
            map,
            image,
        })
    }

    fn push_map(&self, outer: &IndexMap) -> Result<Stage, PatternError> {
        Stage::new(
            self.label.clone(),
            self.component.clone(),
            self.map.clone().then(outer.clone()),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constructed {
    pub pattern: Pattern,
    pub stages: Vec<Stage>,
}

impl Constructed {
    /// A pattern with itself as its only stage.
    pub fn atom(pattern: Pattern, label: impl Into<String>) -> Self {
        let stage = Stage::new(label.into(), pattern.clone(), IndexMap::identity())
            .expect("identity is total");
        Constructed {
            pattern,
            stages: vec![stage],
        }
    }

    /// Stage `i`, counted from 1.
    pub fn stage(&self, i: usize) -> Option<&Stage> {
        i.checked_sub(1).and_then(|i| self.stages.get(i))
    }

    /// The embedding of stage `i` (from 1) into the result.
    pub fn stage_embedding(&self, i: usize) -> Option<&IndexMap> {
        self.stage(i).map(|s| &s.map)
    }

    /// Stage maps are injective and order-preserving, carry component blocks
    /// onto result blocks, and have disjoint images covering `[N]`.
    pub fn provenance_is_sound(&self) -> bool {
        let n = self.pattern.size();
        let mut hit = vec![false; n];
        for s in &self.stages {
            if s.image.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &x in &s.image {
                if x >= n || hit[x] {
                    return false;
                }
                hit[x] = true;
            }
            for b in s.component.ordered_blocks() {
                let img: Vec<usize> = b.iter().map(|&x| s.image[x]).collect();
                if !self.pattern.ordered_blocks().contains(&img) {
                    return false;
                }
            }
        }
        hit.into_iter().all(|h| h)
    }
}

impl From<Pattern> for Constructed {
    fn from(p: Pattern) -> Self {
        Constructed::atom(p, "atom")
    }
}

fn glue(
    arity: usize,
    left: &Constructed,
    left_map: IndexMap,
    right: &Constructed,
    right_map: IndexMap,
) -> Result<Constructed, PatternError> {
    let blocks = vec![left.pattern.map_blocks(&left_map)?, right.pattern.map_blocks(&right_map)?];
    let pattern = Pattern::from_parts(arity, blocks)?;
    let stages = left
        .stages
        .iter()
        .map(|s| s.push_map(&left_map))
        .chain(right.stages.iter().map(|s| s.push_map(&right_map)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Constructed { pattern, stages })
}

fn same_arity(p: &Pattern, q: &Pattern) -> Result<usize, PatternError> {
    if p.arity() != q.arity() {
        return Err(PatternError::Index(format!(
            "arity mismatch: {} vs {}",
            p.arity(),
            q.arity()
        )));
    }
    Ok(p.arity())
}

/// `P_{j1}^{j2} ⊕ Q_i = Φ_{(j1,i),(j2,m−i)}(P) ∪ Φ_{(0,j1),(i,j2−j1)}(Q)` with
/// `m = size(Q)`: the indices of `Q` below `i` land in the gap opened at
/// `j1`, the rest in the gap opened at `j2`.
pub fn oplus(
    p: &Constructed,
    j1: usize,
    j2: usize,
    q: &Constructed,
    i: usize,
) -> Result<Constructed, PatternError> {
    let arity = same_arity(&p.pattern, &q.pattern)?;
    let (np, m) = (p.pattern.size(), q.pattern.size());
    if !(j1 < j2 && j2 <= np) {
        return Err(PatternError::Index(format!("need j1 < j2 <= {np}, got {j1}, {j2}")));
    }
    if i > m {
        return Err(PatternError::Index(format!("need i <= {m}, got {i}")));
    }
    let left = IndexMap::Phi {
        j1,
        l1: i as i64,
        j2,
        l2: (m - i) as i64,
    };
    let right = IndexMap::Phi {
        j1: 0,
        l1: j1 as i64,
        j2: i,
        l2: (j2 - j1) as i64,
    };
    glue(arity, p, left, q, right)
}

/// Block insertion: indices of `P` from `j` on move up by `size(Q)` and `Q`
/// is translated by `j` into the gap.
pub fn insert(p: &Constructed, j: usize, q: &Constructed) -> Result<Constructed, PatternError> {
    let arity = same_arity(&p.pattern, &q.pattern)?;
    if j > p.pattern.size() {
        return Err(PatternError::Index(format!(
            "insertion point {j} beyond size {}",
            p.pattern.size()
        )));
    }
    let left = IndexMap::PhiSingle {
        j,
        l: q.pattern.size() as i64,
    };
    glue(arity, p, left, q, IndexMap::Translate { k: j })
}

/// `ψ_k(P) ∪ {{k, n+1}}` for a planar pattern of size `n` and `k ≤ n`.
pub fn lemma1_extend(p: &Constructed, k: usize) -> Result<Constructed, PatternError> {
    let n = p.pattern.size();
    if p.pattern.arity() != 2 {
        return Err(PatternError::Index("extension needs arity 2".into()));
    }
    if k > n {
        return Err(PatternError::Index(format!("need k <= {n}, got {k}")));
    }
    let psi = IndexMap::Psi { k, n };
    let pair = Pattern::new(2, vec![vec![0, 1]])?;
    let pair_map = IndexMap::Translate { k }.then(IndexMap::PhiSingle {
        j: k + 1,
        l: (n - k) as i64,
    });
    glue(2, p, psi, &Constructed::atom(pair, "new block"), pair_map)
}

/// The `l`-chain of `P` at `j,k`: `Ch^1 = P` and
/// `Ch^{t+1} = (Ch^t)_{tj}^{(t−1)j+k} ⊕ P_k`. Stage `i` is the copy of `P`
/// added at step `i`.
pub fn chain(p: &Pattern, j: usize, k: usize, l: usize) -> Result<Constructed, PatternError> {
    let n = p.size();
    if !(j < k && k <= n) {
        return Err(PatternError::Index(format!("need j < k <= {n}, got {j}, {k}")));
    }
    if l == 0 {
        return Err(PatternError::Index("chain length must be at least 1".into()));
    }
    let mut ch = Constructed::atom(p.clone(), "stage 1");
    for t in 1..l {
        let next = Constructed::atom(p.clone(), format!("stage {}", t + 1));
        ch = oplus(&ch, t * j, (t - 1) * j + k, &next, k)?;
    }
    Ok(ch)
}

/// The closed-form stage map of a chain: for stage 1,
/// `Φ_{(j,(l−2)n+k),(k,n−k)}`; for stage `i ≥ 2`,
/// `(T_j)^{i−1} ∘ Φ_{(j,(l−i−1)n+k),(k,n−j)}`.
pub fn closed_form_stage_map(
    n: usize,
    j: usize,
    k: usize,
    l: usize,
    i: usize,
) -> Result<IndexMap, PatternError> {
    let (n, ji, ki, li, ii) = (n as i64, j as i64, k as i64, l as i64, i as i64);
    let (shift, tail) = if i == 1 {
        ((li - 2) * n + ki, n - ki)
    } else {
        ((li - ii - 1) * n + ki, n - ji)
    };
    let phi = IndexMap::Phi {
        j1: j,
        l1: shift,
        j2: k,
        l2: tail,
    };
    if shift < 0 {
        return Err(PatternError::NegativeShift {
            map: format!("{phi:?}"),
            shift,
        });
    }
    Ok(if i == 1 {
        phi
    } else {
        phi.then(IndexMap::Translate { k: j * (i - 1) })
    })
}

/// Comparison of one chain stage against the closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormCheck {
    pub stage: usize,
    pub provenance: Vec<usize>,
    /// `None` when the closed form has a negative shift at this stage.
    pub closed_form: Option<Vec<usize>>,
    pub agrees: bool,
}

/// Validates the closed-form stage maps of `Ch^l_{j,k}(P)` against provenance.
pub fn chain_closed_form_report(
    p: &Pattern,
    j: usize,
    k: usize,
    l: usize,
) -> Result<Vec<ClosedFormCheck>, PatternError> {
    let ch = chain(p, j, k, l)?;
    let n = p.size();
    let domain: Vec<usize> = (0..n).collect();
    Ok(ch
        .stages
        .iter()
        .enumerate()
        .map(|(idx, s)| {
            let closed_form = closed_form_stage_map(n, j, k, l, idx + 1)
                .and_then(|m| m.apply_all(&domain))
                .ok();
            ClosedFormCheck {
                stage: idx + 1,
                provenance: s.image.clone(),
                agrees: closed_form.as_deref() == Some(&s.image[..]),
                closed_form,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(arity: usize, blocks: &[&[usize]]) -> Pattern {
        Pattern::new(arity, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn atom(p: Pattern) -> Constructed {
        Constructed::from(p)
    }

    #[test]
    fn lemma1_extend_examples() {
        let p = atom(pat(2, &[&[0, 1]]));
        assert_eq!(lemma1_extend(&p, 1).unwrap().pattern, pat(2, &[&[0, 2], &[1, 3]]));
        assert_eq!(lemma1_extend(&p, 2).unwrap().pattern, pat(2, &[&[0, 1], &[2, 3]]));
        let p = atom(pat(2, &[&[0, 2], &[1, 3]]));
        let e = lemma1_extend(&p, 0).unwrap();
        assert_eq!(e.pattern, pat(2, &[&[1, 3], &[2, 4], &[0, 5]]));
        assert!(e.provenance_is_sound());
        assert_eq!(e.stages[1].image, vec![0, 5]);
    }

    #[test]
    fn oplus_examples() {
        let t = atom(pat(3, &[&[0, 1, 2]]));
        let r = oplus(&t, 1, 2, &t, 2).unwrap();
        assert_eq!(r.pattern, pat(3, &[&[0, 3, 5], &[1, 2, 4]]));
        let e = atom(pat(2, &[&[0, 1]]));
        assert_eq!(oplus(&e, 0, 2, &e, 0).unwrap().pattern, pat(2, &[&[0, 1], &[2, 3]]));
        assert!(matches!(oplus(&t, 1, 2, &e, 0), Err(PatternError::Index(_))));
        assert!(matches!(oplus(&t, 2, 2, &t, 0), Err(PatternError::Index(_))));
    }

    #[test]
    fn insert_shifts_and_translates() {
        let p = atom(pat(2, &[&[0, 2], &[1, 3]]));
        let q = atom(pat(2, &[&[0, 1]]));
        let r = insert(&p, 1, &q).unwrap();
        assert_eq!(r.pattern, pat(2, &[&[0, 4], &[1, 2], &[3, 5]]));
        assert!(r.provenance_is_sound());
    }

    #[test]
    fn chain_examples() {
        let p = pat(3, &[&[0, 1, 2]]);
        assert_eq!(chain(&p, 1, 2, 1).unwrap().pattern, p);
        let c2 = chain(&p, 1, 2, 2).unwrap();
        assert_eq!(c2.pattern, pat(3, &[&[0, 3, 5], &[1, 2, 4]]));
        assert_eq!(c2.stage(1).unwrap().image, vec![0, 3, 5]);
        assert_eq!(c2.stage(2).unwrap().image, vec![1, 2, 4]);
        let c3 = chain(&p, 1, 2, 3).unwrap();
        assert_eq!(c3.pattern.size(), 9);
        assert!(c3.provenance_is_sound());
        let c4 = chain(&p, 1, 2, 4).unwrap();
        assert_eq!(
            c4.pattern,
            pat(3, &[&[0, 9, 11], &[1, 7, 10], &[2, 5, 8], &[3, 4, 6]])
        );
    }

    #[test]
    fn chain_stage_one_is_identity_for_l_one() {
        let p = pat(3, &[&[0, 1, 2]]);
        let c = chain(&p, 1, 2, 1).unwrap();
        assert_eq!(c.stage(1).unwrap().image, vec![0, 1, 2]);
    }

    #[test]
    fn closed_form_agrees_where_defined() {
        let p = pat(3, &[&[0, 1, 2]]);
        let report = chain_closed_form_report(&p, 1, 2, 2).unwrap();
        assert!(report[0].agrees);
        assert_eq!(report[1].closed_form, None);
        assert!(matches!(
            closed_form_stage_map(3, 1, 2, 2, 2),
            Err(PatternError::NegativeShift { shift: -1, .. })
        ));
    }
}
