use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("field order {p}^{e} exceeds the table limit {limit}")]
    TableLimit { p: u64, e: u32, limit: u64 },

    #[error("element index {index} is not valid in GF({q})")]
    InvalidElement { index: u32, q: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: u64, size: u64 },

    #[error("resource guard tripped: {0}")]
    ResourceGuard(String),

    #[error("incompatible field tower: {0}")]
    IncompatibleField(String),

    #[error("partial map: {0}")]
    Partial(String),

    #[error("not a cover: line {line} is incident with no cover element")]
    NotCover { line: usize },

    #[error("infeasible instance: element {element} lies in no set")]
    Infeasible { element: usize },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}
