use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("form is not {expected}: {detail}")]
    FormSymmetry { expected: &'static str, detail: String },
    #[error("form is degenerate (radical of dimension {0})")]
    Degenerate(usize),
    #[error("containment violated: {0}")]
    Containment(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("element does not preserve the form: {0}")]
    NotInLieAlgebra(String),
    #[error("N^{order} != 0; weight filtration centered at {center} needs N^{order} = 0", order = .center + 1)]
    NilpotencyOrder { center: usize },
    #[error("the zero element has no standard triple")]
    ZeroNilpotent,
    #[error("invalid invariants: {}", .0.join("; "))]
    InvalidInvariants(Vec<String>),
    /// An exact post-condition failed. This signals a bug upstream, not bad input.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for errors caused by malformed input data rather than by its meaning.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
