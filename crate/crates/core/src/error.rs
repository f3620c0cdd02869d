use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MotkitError {
    #[error("invalid Cartan type {letter}{rank}: {reason}")]
    InvalidCartanType { letter: String, rank: usize, reason: String },
    #[error("{0} is not a prime (or exceeds 2^31)")]
    NotPrime(u64),
    #[error("Weyl group of order {order} exceeds the enumeration bound {bound}")]
    WeylTooLarge { order: u128, bound: u128 },
    #[error("element of length {length} exceeds the bound {bound}")]
    LengthTooLarge { length: usize, bound: usize },
    #[error("objects live over different root data ({0} vs {1})")]
    DatumMismatch(String, String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("polynomial is not integral; the Demazure operator is defined over Z only")]
    NotIntegral,
    #[error("coinvariant quotient does not vanish in degree {degree} (dimension {dim}); invariants computation is wrong")]
    QuotientDoesNotVanish { degree: usize, dim: usize },
    #[error("no degree-2 element x with Demazure image 1 for generator s{s} at p = {p}")]
    NoSplittingElement { s: usize, p: u32 },
    #[error("odd grading shift {0}; only even shifts are allowed")]
    OddShift(i32),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("module does not live over this algebra: {0}")]
    AlgebraMismatch(String),
    #[error("classification failure for {element}: {reason}")]
    Classification { element: String, reason: String },
    #[error("normalization failure: {0}")]
    Normalization(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("input rejected: {0}")]
    Rejected(String),
    #[error("arithmetic self-check failed: {0}")]
    SelfCheck(String),
}

pub type Result<T> = std::result::Result<T, MotkitError>;
