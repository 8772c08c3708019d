use thiserror::Error;

use crate::lattice::LatticeError;
use crate::text::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid element id {0}")]
    InvalidElement(usize),
    #[error("unknown element name `{0}`")]
    UnknownName(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("malformed definition: {0}")]
    Malformed(String),
    /// A property that holds by proof failed to hold; either an implementation
    /// bug or a reportable counterexample.
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
