use thiserror::Error;

/// Errors raised by the exact engines.
///
/// Every variant is a contract or precondition violation; none of the
/// operations in this crate perform I/O.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multi-index has {found} entries, expected {expected}")]
    IndexLength { expected: usize, found: usize },

    #[error("multi-index of total order {order} exceeds truncation order {truncation}")]
    BeyondTruncation { order: u32, truncation: u32 },

    #[error("series have different variable counts ({left} vs {right})")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("series constant term must be {expected}, found {found}")]
    ConstantTerm { expected: &'static str, found: String },

    #[error("series must be univariate, found {0} variables")]
    NotUnivariate(usize),

    #[error("truncation order {available} is insufficient, need at least {required}")]
    InsufficientOrder { available: u32, required: u32 },

    #[error("moment table is not normalized: mu(0) = {0}, expected 1")]
    NotNormalized(String),

    #[error("table must have at least one type")]
    NoTypes,

    #[error("{what} = {value} exceeds the enumeration cap {cap}")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },

    #[error("cannot certify the Dobinski tail: {0}")]
    InsufficientPrecision(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("diagram is disconnected")]
    Disconnected,

    #[error("leg signature mismatch at position {position}: {detail}")]
    SignatureMismatch { position: usize, detail: String },

    #[error("per-line exponent is undefined for vacuum diagrams (el = 0)")]
    UndefinedForVacuum,

    #[error("odd number of external legs ({0}); gauge-invariant diagrams carry an even count")]
    OddLegCount(u32),

    #[error("malformed rational {0:?}")]
    ParseRational(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
