use thiserror::Error;

/// Text that could not be parsed. `position` is a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

/// A search ran past its node budget without deciding the question.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("search budget of {budget} nodes exceeded in {what}")]
pub struct BudgetExceeded {
    pub what: &'static str,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("index {index} appears in more than one block")]
    Overlap { index: usize },
    #[error("blocks do not cover [N]: index {missing} is missing")]
    Coverage { missing: usize },
    #[error("block {block:?} has {found} elements, expected {expected}")]
    BlockSize {
        block: Vec<usize>,
        expected: usize,
        found: usize,
    },
    #[error("arity must be positive")]
    ZeroArity,
    #[error("{value} is outside the domain of {map}")]
    Domain { map: String, value: usize },
    #[error("negative shift {shift} in {map}")]
    NegativeShift { map: String, shift: i64 },
    #[error("parameter error: {0}")]
    Index(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("degenerate interval ({lo}, {hi})")]
    EmptyInterval { lo: String, hi: String },
    #[error("invalid essential simplex ({a}, {b})")]
    BadSimplex { a: String, b: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomeoError {
    #[error("prescribed values are not strictly increasing inside (0,1): {0}")]
    Monotonicity(String),
    #[error("prescription lists differ in length ({0} vs {1})")]
    Length(usize, usize),
    #[error("invalid input: {0}")]
    Input(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("witness construction failed: {0}")]
    WitnessConstructionFailed(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DichotomyError {
    #[error("copy search failed: {0}")]
    CopySearchFailed(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("certificate did not verify: {0}")]
    Unverified(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Rank(#[from] RankError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("invalid campaign configuration: {0}")]
    Invalid(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}
