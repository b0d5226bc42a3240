//! Exact arithmetic in the free *-algebra on the generators `u[i,j]`, and the defining
//! relations of the quantum automorphism algebra as checkable rewrite rules.

mod poly;
mod relation;
mod rewrite;
mod text;

use thiserror::Error;

pub use poly::{commutator, integer, rational, Coeff, Gen, Poly, Word};
pub use relation::{all_instances, apply_relation, RelationInstance};
pub use rewrite::{
    evaluate_perm, expand_unity, local_reduce, pair_rule, reduce_word, replace_first, rewrite_at,
    PairRule, Side,
};
pub use text::PolyParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Parse(#[from] PolyParseError),
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("position {position} exceeds word length {len}")]
    InvalidPosition { position: usize, len: usize },
    #[error("permutation has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("side condition violated: {0}")]
    SideCondition(String),
    #[error("{0} is not a word rewrite rule")]
    NotRewritable(String),
    #[error("{relation} does not match at position {position}")]
    NoMatch { relation: String, position: usize },
}
