//! Embedding one pattern into another.

use super::Pattern;

/// An injective order-preserving map from the indices of `P` into those of
/// `Q` that carries each block of `P` onto a block of `Q`, as the list of
/// images of `0..size(P)`. Blocks of `P` are matched in order of their first
/// element, so their images are an increasing subsequence of `Q`'s blocks.
pub fn pattern_embedding(p: &Pattern, q: &Pattern) -> Option<Vec<usize>> {
    if p.arity() != q.arity() || p.num_blocks() > q.num_blocks() {
        return None;
    }
    let mut map = vec![usize::MAX; p.size()];
    let mut assigned = Vec::with_capacity(p.size());
    extend(p, q, 0, 0, &mut map, &mut assigned).then_some(map)
}

pub fn pattern_embeds(p: &Pattern, q: &Pattern) -> bool {
    pattern_embedding(p, q).is_some()
}

fn extend(
    p: &Pattern,
    q: &Pattern,
    next_p: usize,
    first_q: usize,
    map: &mut [usize],
    assigned: &mut Vec<usize>,
) -> bool {
    let pb = p.ordered_blocks();
    let qb = q.ordered_blocks();
    if next_p == pb.len() {
        return true;
    }
    let remaining = pb.len() - next_p;
    for qi in first_q..=qb.len() - remaining {
        let base = assigned.len();
        let mut ok = true;
        for (&x, &y) in pb[next_p].iter().zip(&qb[qi]) {
            if assigned.iter().any(|&a| (a < x) != (map[a] < y)) {
                ok = false;
                break;
            }
            map[x] = y;
            assigned.push(x);
        }
        if ok && extend(p, q, next_p + 1, qi + 1, map, assigned) {
            return true;
        }
        for x in assigned.drain(base..) {
            map[x] = usize::MAX;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(arity: usize, blocks: &[&[usize]]) -> Pattern {
        Pattern::new(arity, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn embedding_examples() {
        let one = pat(2, &[&[0, 1]]);
        assert!(pattern_embeds(&one, &pat(2, &[&[0, 2], &[1, 3]])));
        assert!(pattern_embeds(&one, &pat(2, &[&[0, 5], &[1, 4], &[2, 3]])));
        assert!(!pattern_embeds(&pat(2, &[&[0, 2], &[1, 3]]), &pat(2, &[&[0, 1], &[2, 3]])));
        assert!(!pattern_embeds(&one, &Pattern::empty(2)));
    }

    #[test]
    fn embedding_respects_interleaving() {
        let nested = pat(2, &[&[0, 3], &[1, 2]]);
        let q = pat(2, &[&[0, 5], &[1, 2], &[3, 4]]);
        assert_eq!(pattern_embedding(&nested, &q), Some(vec![0, 1, 2, 5]));
        let crossing = pat(2, &[&[0, 2], &[1, 3]]);
        assert!(!pattern_embeds(&crossing, &q));
    }
}
