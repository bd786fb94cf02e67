use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    BadRingSpec(String),

    #[error("monomial has {found} exponents, ring has {expected} variables")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("ideal is the unit ideal")]
    UnitIdeal,

    #[error("ideal is the zero ideal")]
    ZeroIdeal,

    #[error("module is zero")]
    ZeroModule,

    #[error("bottom ideal is not contained in top ideal")]
    NotSubmodule,

    #[error("empty list of summands")]
    EmptyList,

    #[error("axis ideal must be a nonempty set of variables: {0}")]
    BadAxis(String),

    #[error("index {index} out of range 0..={max}")]
    BadIndex { index: usize, max: usize },

    #[error("generator {0} mixes the x- and y-blocks")]
    WrongBlock(String),

    #[error("bad factor profile: {0}")]
    BadProfile(String),

    #[error("ring outside the hypersurface setting: {0}")]
    BadRing(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Two independent computations of the same quantity disagree.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
