use thiserror::Error;

/// Errors raised by the toolkit.
///
/// The CLI maps [`Error::Usage`] to exit status 2 and every other variant to
/// exit status 3.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("weight constraint violated: n1*r1 + n2*r2 = {total} (must equal 1)")]
    WeightConstraint { total: f64 },

    #[error("improper model: {0}")]
    ImproperModel(String),

    #[error("divergent integral: {0}")]
    Divergent(String),

    #[error("infeasible scenario: {0}")]
    Infeasible(String),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
