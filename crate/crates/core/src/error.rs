use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid generator pair ({a}, {b}): {reason}")]
    InvalidPair { a: i64, b: i64, reason: &'static str },
    #[error("characteristic {0} is not 0 or a supported prime")]
    InvalidCharacteristic(u64),
    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(i64),
    #[error("the differential is not defined on degree-0 cells")]
    DegreeZero,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("label {0} is not a standard class for this case")]
    UnsupportedLabel(String),
    #[error("bar complex oracle supports degrees up to {max}, got {got}")]
    DegreeTooLarge { got: usize, max: usize },
    #[error("cannot parse class label {0:?}")]
    BadLabel(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("series truncation cannot certify coefficient ({m}, {n})")]
    TruncationTooSmall { m: u32, n: i64 },
}
