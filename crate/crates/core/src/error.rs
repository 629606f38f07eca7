use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid dimension vector: {0}")]
    InvalidDimVector(String),

    #[error("incomparable weights: {left} vs {right}")]
    IncomparableWeights { left: usize, right: usize },

    #[error("{op} requires a nonempty partition")]
    EmptyPartition { op: &'static str },

    #[error("{op} requires at least {min} entries, got {got}")]
    TooShort {
        op: &'static str,
        min: usize,
        got: usize,
    },

    #[error("{op} requires a {kind} dimension vector, got {dims:?}")]
    NotMonotone {
        op: &'static str,
        kind: &'static str,
        dims: Vec<usize>,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u64, right: u64 },

    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("no solution")]
    NoSolution,

    #[error("not nilpotent")]
    NotNilpotent,

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("jordan type mismatch: {left:?} vs {right:?}")]
    JordanTypeMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("invalid ab-diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid representation: {0}")]
    InvalidRep(String),

    #[error("relations B_1A_1 = 0, B_iA_i = A_(i-1)B_(i-1) do not hold")]
    RelationsViolated,

    #[error("alpha undefined off Z^ss: A_{index} is not injective")]
    Unstable { index: usize },

    #[error("invalid flag point: {0}")]
    InvalidFlag(String),

    #[error("chain mismatch at interface {interface}: {detail}")]
    ChainMismatch { interface: usize, detail: String },

    #[error("enumeration of {size} items exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    /// A postcondition that the mathematics guarantees failed to hold.
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
