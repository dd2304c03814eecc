//! Rank of a box union: witnesses, exact search, a brute-force oracle and
//! the nested three-dimensional construction.

mod engine;
mod lemma6;
mod oracle;
mod witness;

pub use engine::{rank, rank_at_least, rank_at_least_budgeted, rank_budgeted, DEFAULT_BUDGET};
pub use lemma6::lemma6_witness;
pub use oracle::brute_force_rank;
pub use witness::{
    verify_witness, verify_witness2, verify_witness3, RankReport, RankWitness, RankWitness2D, RankWitness3D,
};
