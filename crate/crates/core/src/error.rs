//! Error taxonomy shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A group presentation that cannot be canonicalized (zero or negative
    /// invariant factor, etc).
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    /// A matrix whose shape or entries do not describe a well-defined
    /// homomorphism between the given groups.
    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),

    /// Composition / addition of homomorphisms whose sources and targets do
    /// not line up.
    #[error("incompatible homomorphisms: {0}")]
    IncompatibleHomomorphisms(String),

    /// Hom-set enumeration requested where the Hom group is infinite.
    #[error("not enumerable: {0}")]
    NotEnumerable(String),

    /// A homology query above the degree up to which the table is asserted
    /// complete.
    #[error("insufficient table: degree {degree} is above the table cutoff {cutoff} of {space}")]
    InsufficientTable {
        space: String,
        degree: u32,
        cutoff: u32,
    },

    /// Homology dimension of a space with an empty homology table.
    #[error("undefined dimension: {0} has no nonzero homology")]
    UndefinedDimension(String),

    /// An operation invoked outside its stated hypotheses.
    #[error("precondition violation: {0}")]
    PreconditionViolation(String),

    /// A graded endomorphism or block endomorphism queried beyond the degrees
    /// it carries.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A model shape the implementation deliberately does not handle.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Malformed user input (identifier grammar, group grammar, files).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
