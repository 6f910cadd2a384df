use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input did not satisfy a type invariant (ordering, duplicates, size).
    #[error("invalid input: {0}")]
    Validation(String),

    /// The value is not an element of the value set.
    #[error("{0} is not an element of the value set")]
    NotInSet(i64),

    #[error("need at least two gaps (three values) to define r and s")]
    DegenerateGaps,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// Multiset subtraction where the subtrahend is not contained in the minuend.
    #[error("multiset {sub:?} is not contained in {of:?}")]
    NotSubmultiset { sub: Vec<i64>, of: Vec<i64> },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A situation the underlying combinatorial argument rules out. Always a bug.
    #[error("invariant violation in {context}: {detail}")]
    Invariant { context: &'static str, detail: String },
}

impl Error {
    pub(crate) fn invariant(context: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant {
            context,
            detail: detail.into(),
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
