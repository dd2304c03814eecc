//! Injective order-preserving maps `ℕ → ℕ` used to glue patterns together.

use serde::{Deserialize, Serialize};

use crate::error::PatternError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IndexMap {
    /// `[n] → [n+1] ∖ {k}`: `x ↦ x` below `k`, `x ↦ x+1` from `k` on.
    Psi { k: usize, n: usize },
    /// Inverse of [`IndexMap::Psi`] on `[n+1] ∖ {k}`.
    PsiInverse { k: usize, n: usize },
    /// `x ↦ x` below `j1`, `x+l1` on `[j1,j2)`, `x+l1+l2` from `j2` on.
    /// With `j1 = j2` it agrees with `PhiSingle { j: j1, l: l1 + l2 }`.
    Phi { j1: usize, l1: i64, j2: usize, l2: i64 },
    /// `x ↦ x` below `j`, `x+l` from `j` on.
    PhiSingle { j: usize, l: i64 },
    /// `x ↦ x+k`.
    Translate { k: usize },
    /// The steps applied in order, first step first.
    Composition { steps: Vec<IndexMap> },
}

impl IndexMap {
    pub fn identity() -> Self {
        IndexMap::Composition { steps: Vec::new() }
    }

    fn negative(&self, shift: i64) -> PatternError {
        PatternError::NegativeShift {
            map: format!("{self:?}"),
            shift,
        }
    }

    pub fn apply(&self, x: usize) -> Result<usize, PatternError> {
        let domain = || PatternError::Domain {
            map: format!("{self:?}"),
            value: x,
        };
        match *self {
            IndexMap::Psi { k, n } => {
                if x >= n {
                    return Err(domain());
                }
                Ok(if x < k { x } else { x + 1 })
            }
            IndexMap::PsiInverse { k, n } => {
                if x == k || x > n {
                    return Err(domain());
                }
                Ok(if x < k { x } else { x - 1 })
            }
            IndexMap::Phi { j1, l1, j2, l2 } => {
                if l1 < 0 {
                    return Err(self.negative(l1));
                }
                if l2 < 0 {
                    return Err(self.negative(l2));
                }
                if j1 > j2 {
                    return Err(PatternError::Index(format!("{self:?} needs j1 <= j2")));
                }
                Ok(if x < j1 {
                    x
                } else if x < j2 {
                    x + l1 as usize
                } else {
                    x + (l1 + l2) as usize
                })
            }
            IndexMap::PhiSingle { j, l } => {
                if l < 0 {
                    return Err(self.negative(l));
                }
                Ok(if x < j { x } else { x + l as usize })
            }
            IndexMap::Translate { k } => Ok(x + k),
            IndexMap::Composition { ref steps } => {
                steps.iter().try_fold(x, |acc, m| m.apply(acc))
            }
        }
    }

    pub fn apply_all(&self, xs: &[usize]) -> Result<Vec<usize>, PatternError> {
        xs.iter().map(|&x| self.apply(x)).collect()
    }

    /// `other` after `self`.
    pub fn then(self, other: IndexMap) -> IndexMap {
        let mut steps = match self {
            IndexMap::Composition { steps } => steps,
            m => vec![m],
        };
        match other {
            IndexMap::Composition { steps: more } => steps.extend(more),
            m => steps.push(m),
        }
        IndexMap::Composition { steps }
    }
}

pub fn apply_index_map(m: &IndexMap, x: usize) -> Result<usize, PatternError> {
    m.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_formulas() {
        let psi = IndexMap::Psi { k: 1, n: 2 };
        assert_eq!(psi.apply_all(&[0, 1]).unwrap(), vec![0, 2]);
        assert!(psi.apply(2).is_err());
        let phi = IndexMap::Phi { j1: 1, l1: 2, j2: 2, l2: 1 };
        assert_eq!(phi.apply_all(&[0, 1, 2]).unwrap(), vec![0, 3, 5]);
        assert_eq!(IndexMap::Translate { k: 3 }.apply_all(&[0, 2, 4]).unwrap(), vec![3, 5, 7]);
    }

    #[test]
    fn psi_inverse_and_errors() {
        let inv = IndexMap::PsiInverse { k: 1, n: 2 };
        assert_eq!(inv.apply_all(&[0, 2]).unwrap(), vec![0, 1]);
        assert!(matches!(inv.apply(1), Err(PatternError::Domain { .. })));
        let neg = IndexMap::Phi { j1: 1, l1: -1, j2: 2, l2: 1 };
        assert!(matches!(neg.apply(0), Err(PatternError::NegativeShift { shift: -1, .. })));
    }

    #[test]
    fn equal_breakpoints_collapse() {
        let a = IndexMap::Phi { j1: 2, l1: 1, j2: 2, l2: 3 };
        let b = IndexMap::PhiSingle { j: 2, l: 4 };
        for x in 0..8 {
            assert_eq!(a.apply(x).unwrap(), b.apply(x).unwrap());
        }
    }

    #[test]
    fn maps_are_injective_and_monotone() {
        let maps = [
            IndexMap::Psi { k: 2, n: 5 },
            IndexMap::Phi { j1: 1, l1: 2, j2: 3, l2: 4 },
            IndexMap::PhiSingle { j: 2, l: 3 },
            IndexMap::Translate { k: 2 }.then(IndexMap::PhiSingle { j: 4, l: 1 }),
        ];
        for m in &maps {
            let img = m.apply_all(&[0, 1, 2, 3, 4]).unwrap();
            assert!(img.windows(2).all(|w| w[0] < w[1]), "{m:?}");
        }
    }

    #[test]
    fn json_is_tagged() {
        let m = IndexMap::Phi { j1: 1, l1: 2, j2: 2, l2: 1 };
        let j = serde_json::to_string(&m).unwrap();
        assert_eq!(j, r#"{"kind":"phi","j1":1,"l1":2,"j2":2,"l2":1}"#);
        assert_eq!(serde_json::from_str::<IndexMap>(&j).unwrap(), m);
    }
}
