use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable count {0} is outside 1..=64")]
    InvalidVariableCount(usize),

    #[error("subset {mask:#x} is not contained in [{n}]")]
    SubsetOutOfRange { mask: u64, n: usize },

    #[error("factors share variables; use the reducing product")]
    SharedVariables,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("degree {degree} exceeds n/2 for n = {n}")]
    DegreeTooLarge { degree: usize, n: usize },

    #[error("polynomial is not harmonic")]
    NotHarmonic,

    #[error("set {0:?} is not admissible")]
    NotAdmissible(Vec<usize>),

    #[error("missing value for slice point {0:#b}")]
    MissingPoint(u64),

    #[error("interpolation nodes must be distinct")]
    RepeatedNode,

    #[error("enumeration budget exceeded: {needed} points > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("function is not Boolean-valued")]
    NotBoolean,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
