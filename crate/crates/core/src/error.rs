use thiserror::Error;

/// Failures raised by stencil construction, polynomial algebra and the
/// weight-function builders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Stencil nodes are not strictly increasing.
    #[error("stencil nodes must be strictly increasing (violated at offset {offset})")]
    Order { offset: i64 },

    /// Wrong number of values, or a sample missing for a stencil node.
    #[error("arity mismatch: {0}")]
    Arity(String),

    /// An index, subdivision level or derivative order outside its admissible range.
    #[error("out of range: {0}")]
    Range(String),

    /// A rational function was evaluated at (or numerically next to) a pole.
    #[error("pole: denominator vanishes at x = {at}")]
    Pole { at: String },

    /// The pointwise oracle system has no full-rank row selection.
    #[error("singular system: rank {rank} < {unknowns} unknowns")]
    SingularSystem { rank: usize, unknowns: usize },

    /// Remaining oracle rows are not satisfied by the solved weights.
    #[error("inconsistent system: row at offset {offset} is not satisfied")]
    InconsistentSystem { offset: i64 },

    #[error("polynomial gcd is only defined in exact arithmetic")]
    InexactGcd,

    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Order { .. } => "order",
            Error::Arity(_) => "arity",
            Error::Range(_) => "range",
            Error::Pole { .. } => "pole",
            Error::SingularSystem { .. } => "singular_system",
            Error::InconsistentSystem { .. } => "inconsistent_system",
            Error::InexactGcd => "inexact_gcd",
            Error::ZeroGcd => "zero_gcd",
            Error::DivisionByZero => "division_by_zero",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn range_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Range(msg.into()))
}
