//! Patterns: partitions of `[N] = {0,…,N−1}` into blocks of a fixed arity.
//!
//! A block `{a_1 < … < a_n}` stands for a point of `Δⁿ` whose coordinates
//! occupy the given ranks among all coordinates of the pattern.

mod construct;
mod embed;
mod grid;
mod index_map;

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{ParseError, PatternError};

pub use construct::{
    chain, chain_closed_form_report, closed_form_stage_map, insert, lemma1_extend, oplus,
    ClosedFormCheck, Constructed, Stage,
};
pub use embed::{pattern_embeds, pattern_embedding};
pub use grid::{all_grids, grid_cells, grid_count, grid_pattern, is_grid, min_grid_width, GridCells};
pub use index_map::{apply_index_map, IndexMap};

/// A block as a strictly increasing tuple of indices.
pub type OrderedBlock = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPattern")]
pub struct Pattern {
    arity: usize,
    blocks: Vec<OrderedBlock>,
}

#[derive(Deserialize)]
struct RawPattern {
    arity: usize,
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<RawPattern> for Pattern {
    type Error = PatternError;
    fn try_from(raw: RawPattern) -> Result<Self, Self::Error> {
        Pattern::new(raw.arity, raw.blocks)
    }
}

impl Pattern {
    /// Validates that the blocks partition `[N]` into `arity`-element sets.
    pub fn new(arity: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PatternError> {
        if arity == 0 {
            return Err(PatternError::ZeroArity);
        }
        let mut ordered = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut b = block.clone();
            b.sort_unstable();
            b.dedup();
            if b.len() != arity {
                return Err(PatternError::BlockSize {
                    block,
                    expected: arity,
                    found: b.len(),
                });
            }
            ordered.push(b);
        }
        let size = arity * ordered.len();
        let mut seen = vec![false; size];
        for b in &ordered {
            for &x in b {
                if x >= size {
                    // An index past N leaves a gap in [N], reported below.
                    continue;
                }
                if seen[x] {
                    return Err(PatternError::Overlap { index: x });
                }
                seen[x] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(PatternError::Coverage { missing });
        }
        ordered.sort();
        Ok(Pattern {
            arity,
            blocks: ordered,
        })
    }

    /// The empty pattern of the given arity.
    pub fn empty(arity: usize) -> Self {
        Pattern {
            arity,
            blocks: Vec::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `N`, the number of indices.
    pub fn size(&self) -> usize {
        self.arity * self.blocks.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Blocks sorted ascending, listed by first element.
    pub fn ordered_blocks(&self) -> &[OrderedBlock] {
        &self.blocks
    }

    /// Block containing index `x` and the position of `x` inside it.
    pub fn locate(&self, x: usize) -> Option<(usize, usize)> {
        self.blocks
            .iter()
            .enumerate()
            .find_map(|(bi, b)| b.iter().position(|&y| y == x).map(|pos| (bi, pos)))
    }

    /// Image of every block under `m`, without re-validating the cover.
    pub fn map_blocks(&self, m: &IndexMap) -> Result<Vec<Vec<usize>>, PatternError> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&x| m.apply(x)).collect())
            .collect()
    }

    /// Union of block families that must together partition `[N]`.
    pub fn from_parts(arity: usize, parts: Vec<Vec<Vec<usize>>>) -> Result<Self, PatternError> {
        Pattern::new(arity, parts.into_iter().flatten().collect())
    }
}

pub fn make_pattern(arity: usize, blocks: Vec<Vec<usize>>) -> Result<Pattern, PatternError> {
    Pattern::new(arity, blocks)
}

/// Every pattern of the given arity on `size` indices, in lexicographic
/// order of their blocks. Empty when `arity` does not divide `size`.
pub fn all_patterns(arity: usize, size: usize) -> Vec<Pattern> {
    fn extend(arity: usize, free: &[usize], blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Pattern>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(Pattern::new(arity, blocks.clone()).expect("partition"));
            return;
        };
        for others in rest.iter().copied().combinations(arity - 1) {
            let mut block = vec![first];
            block.extend(&others);
            let left: Vec<usize> = rest.iter().copied().filter(|x| !others.contains(x)).collect();
            blocks.push(block);
            extend(arity, &left, blocks, out);
            blocks.pop();
        }
    }
    let mut out = Vec::new();
    if arity == 0 || size % arity != 0 {
        return out;
    }
    let free: Vec<usize> = (0..size).collect();
    extend(arity, &free, &mut Vec::new(), &mut out);
    out
}

pub fn ordered_blocks(p: &Pattern) -> Vec<OrderedBlock> {
    p.ordered_blocks().to_vec()
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (k, x) in b.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for Pattern {
    type Err = ParseError;

    /// Parses `{{0,2,4},{1,3,5}}`; the arity is the size of the first block.
    /// `{}` is rejected because its arity is unknown.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let expect = |pos: &mut usize, c: u8| -> Result<(), ParseError> {
            skip_ws(pos);
            if *pos < bytes.len() && bytes[*pos] == c {
                *pos += 1;
                Ok(())
            } else {
                Err(ParseError::new(*pos, format!("expected '{}'", c as char)))
            }
        };
        let peek = |pos: &mut usize| -> Option<u8> {
            skip_ws(pos);
            bytes.get(*pos).copied()
        };
        expect(&mut pos, b'{')?;
        let mut blocks = Vec::new();
        if peek(&mut pos) != Some(b'}') {
            loop {
                expect(&mut pos, b'{')?;
                let mut block = Vec::new();
                loop {
                    skip_ws(&mut pos);
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let n: usize = s[start..pos]
                        .parse()
                        .map_err(|_| ParseError::new(start, "expected an index"))?;
                    block.push(n);
                    match peek(&mut pos) {
                        Some(b',') => pos += 1,
                        Some(b'}') => {
                            pos += 1;
                            break;
                        }
                        _ => return Err(ParseError::new(pos, "expected ',' or '}'")),
                    }
                }
                blocks.push(block);
                match peek(&mut pos) {
                    Some(b',') => pos += 1,
                    Some(b'}') => break,
                    _ => return Err(ParseError::new(pos, "expected ',' or '}'")),
                }
            }
        }
        expect(&mut pos, b'}')?;
        skip_ws(&mut pos);
        if pos != bytes.len() {
            return Err(ParseError::new(pos, "trailing input"));
        }
        let arity = blocks
            .first()
            .map(Vec::len)
            .ok_or_else(|| ParseError::new(0, "empty pattern has no arity"))?;
        Pattern::new(arity, blocks).map_err(|e| ParseError::new(0, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = [0, 2, 4, 6, 8].iter().map(|&n| all_patterns(2, n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 15, 105]);
        assert_eq!(all_patterns(3, 6).len(), 10);
        assert!(all_patterns(2, 3).is_empty());
    }

    #[test]
    fn make_pattern_examples() {
        assert_eq!(make_pattern(2, vec![vec![0, 1]]).unwrap().size(), 2);
        assert_eq!(make_pattern(3, vec![vec![0, 2, 4], vec![1, 3, 5]]).unwrap().size(), 6);
        assert_eq!(
            make_pattern(2, vec![vec![0, 1], vec![1, 2]]),
            Err(PatternError::Overlap { index: 1 })
        );
        assert!(matches!(
            make_pattern(2, vec![vec![0, 2]]),
            Err(PatternError::Coverage { missing: 1 })
        ));
        assert!(matches!(
            make_pattern(3, vec![vec![0, 1]]),
            Err(PatternError::BlockSize { .. })
        ));
    }

    #[test]
    fn ordered_blocks_examples() {
        assert_eq!(ordered_blocks(&make_pattern(2, vec![vec![1, 0]]).unwrap()), vec![vec![0, 1]]);
        assert_eq!(ordered_blocks(&make_pattern(3, vec![vec![2, 0, 1]]).unwrap()), vec![vec![0, 1, 2]]);
        assert_eq!(
            ordered_blocks(&make_pattern(3, vec![vec![1, 3, 5], vec![0, 2, 4]]).unwrap()),
            vec![vec![0, 2, 4], vec![1, 3, 5]]
        );
    }

    #[test]
    fn text_and_json_round_trip() {
        let p: Pattern = "{{0,2,4},{1,3,5}}".parse().unwrap();
        assert_eq!(p.arity(), 3);
        assert_eq!(p.to_string(), "{{0,2,4},{1,3,5}}");
        assert_eq!(" { {1, 0} } ".parse::<Pattern>().unwrap().to_string(), "{{0,1}}");
        assert!("{{0,1},{1,2}}".parse::<Pattern>().is_err());
        assert!("{{0,1}".parse::<Pattern>().is_err());
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"{"arity":3,"blocks":[[0,2,4],[1,3,5]]}"#);
        assert_eq!(serde_json::from_str::<Pattern>(&j).unwrap(), p);
        assert!(serde_json::from_str::<Pattern>(r#"{"arity":2,"blocks":[[0,0]]}"#).is_err());
    }
}
