use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("n = {n} exceeds the enumeration limit of {limit} for {class}")]
    LimitExceeded { n: usize, limit: usize, class: String },

    #[error("polynomial is not palindromic: a_{low} = {low_coeff} but a_{high} = {high_coeff}")]
    NotPalindromic {
        low: u32,
        high: u32,
        low_coeff: String,
        high_coeff: String,
    },

    #[error("the zero polynomial has no center")]
    ZeroPolynomial,

    #[error("not expandable in the (t,q) basis at k = {k}: {reason}")]
    NotDilksExpandable { k: u32, reason: String },

    #[error("recurrence division by {divisor} is inexact at (n, k) = ({n}, {k})")]
    InexactDivision { n: u32, k: i64, divisor: u32 },

    #[error("series divisor must have constant term +1 or -1")]
    NonUnitDivisor,

    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("{system} fixed point has a nonzero residual in equation `{equation}` at z^{order}")]
    NonzeroResidual {
        system: &'static str,
        equation: &'static str,
        order: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("corrupt table file at line {line}: {reason}")]
    CorruptTable { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
