use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("extension degree {0} out of range (1..=16)")]
    DegreeOutOfRange(u32),

    #[error("modulus {modulus:#x} does not have degree {n}")]
    ModulusDegree { n: u32, modulus: u32 },

    #[error("modulus {modulus:#x} is reducible (divisible by {factor:#x})")]
    ReducibleModulus { modulus: u32, factor: u32 },

    #[error("exponent {exponent} out of range for n={n} (max {max})")]
    ExponentOutOfRange { n: u32, exponent: u64, max: u64 },

    #[error("value {value:#x} does not fit in {bits} bits")]
    ValueOutOfRange { value: u32, bits: u32 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what}: {count} exceeds cap {cap}")]
    CapExceeded { what: &'static str, count: u128, cap: u128 },

    #[error("function is not {k}th-order sum-free: witness vanishes on {flat}")]
    NotSumFree { k: u32, flat: String },

    #[error("function is degree-{k} degenerate: component v={v:#x} has degree {degree}")]
    Degenerate { k: u32, v: u32, degree: String },

    #[error("code is not a subcode of RM({r},{n})")]
    NotSubcode { r: u32, n: u32 },

    #[error("codimension {m} exceeds n={n}")]
    CodimensionTooLarge { m: u32, n: u32 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("incomplete certificate: {0}")]
    IncompleteAssignment(String),

    #[error("unknown claim id {id:?}; valid ids: {valid}")]
    UnknownClaim { id: String, valid: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("thread pool: {0}")]
    ThreadPool(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
