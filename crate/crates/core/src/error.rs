use thiserror::Error;

/// Failures while constructing rings or combining their elements.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("characteristic {0} is not a prime")]
    NotPrime(u64),
    #[error("operands belong to different polynomial rings")]
    MixedRings,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid variable list: {0}")]
    InvalidVariables(String),
    #[error("exponent overflow")]
    ExponentOverflow,
}

/// Failures of the polynomial text parser. Positions are byte offsets into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent overflow at position {pos}")]
    ExponentOverflow { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// An operation was called outside its documented domain.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The ring shape is not handled by the operation (e.g. non-hypersurface quotients).
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Generic rank requested over a ring that turned out not to be a domain.
    #[error("not a domain: {0}")]
    NotDomain(String),
    #[error("{0}")]
    Failed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
