use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid code parameters: {0}")]
    InvalidParams(String),

    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(String),

    #[error("bit-level rates need q = 2^b; this code has no bit width")]
    BitLevelUnavailable,

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    /// A count that is a difference of two counts went negative. This can
    /// only happen through an indexing mistake in the formulas.
    #[error("formula inconsistency: {0}")]
    FormulaInconsistency(String),

    #[error("unsupported field order q = {0}")]
    UnsupportedField(u32),

    #[error("request too large for exhaustive enumeration: {0}")]
    TooLarge(String),

    #[error("not an MDS code: {0}")]
    NotMds(String),

    #[error("malformed table: {0}")]
    Table(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
