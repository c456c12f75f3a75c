//! Exact arithmetic for finitely generated abelian groups and the homology
//! algebra of wedge sums: block endomorphisms, reducibility criteria,
//! truncated-polynomial cohomology endomorphisms, and an evidence engine for
//! homology self-closeness numbers.
//!
//! Everything is integer-exact (arbitrary precision, no floating point) and
//! deterministic: the same inputs always produce the same outputs, including
//! enumeration orders and evidence trails.

pub mod block;
pub mod catalog;
pub mod closeness;
pub mod criteria;
pub mod error;
pub mod group;
pub mod hom;
pub mod matrix;
pub mod oracle;
pub mod ring;
pub mod space;

pub use error::Error;

/// Outcome of a decision procedure that is allowed to give up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trilean {
    True,
    False,
    Undecided,
}

impl Trilean {
    pub fn is_true(self) -> bool {
        self == Trilean::True
    }
}

impl std::fmt::Display for Trilean {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Trilean::True => write!(f, "true"),
            Trilean::False => write!(f, "false"),
            Trilean::Undecided => write!(f, "undecided"),
        }
    }
}
