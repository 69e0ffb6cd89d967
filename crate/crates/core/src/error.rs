use thiserror::Error;

/// Errors raised by the pipeline. Internal consistency failures are surfaced
/// as [`Error::Internal`] rather than swallowed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at position {pos} (only x and y are allowed)")]
    UnknownVariable { pos: usize, name: String },
    #[error("the zero polynomial is not a valid germ")]
    ZeroPolynomial,
    #[error("germ is a unit (does not vanish at the origin): {0}")]
    NotThroughOrigin(String),
    #[error("f and g must have no common factors; gcd = {0}")]
    CommonFactor(String),
    #[error("singularity is not isolated: gcd of the partials is {0}")]
    NonIsolated(String),
    #[error("coordinates are not generic for the resultant: shear {0} gives order {1}, shear {2} gives order {3}")]
    NonGeneric(i64, usize, i64, usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("branch verification failed: {0}")]
    Verification(String),
    #[error("internal error: {0}")]
    Internal(String),
}
