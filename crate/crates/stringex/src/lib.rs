//! Exchange matrices from string diagrams over trapezoid triangulations.
//!
//! A trapezoid is described by a pair of `[1, n]`-sequences (its top and
//! bottom edge labels) together with a symmetrizable generalized Cartan
//! matrix. Triangulations of the trapezoid are exactly shuffles of the two
//! sequences; each triangulation carries a string diagram whose closed
//! strings index a skew-symmetrizable exchange matrix.
//!
//! The crate builds these matrices, mutates them, walks between
//! triangulations by diagonal flips and boundary reductions, and produces
//! machine-checkable certificates that every such matrix is reachable from
//! the empty matrix by source-sink extensions and mutations.

pub mod cartan;
pub mod diagram;
pub mod dot;
pub mod exchange;
pub mod instance;
pub mod moves;
pub mod mutation;
pub mod oracle;
pub mod pprime;
pub mod sample;
pub mod word;

pub use cartan::CartanMatrix;
pub use diagram::{build_diagram, ClosedStringId, Node, StringDiagram};
pub use exchange::{exchange_matrix, ColouredQuiver, ExchangeMatrix, UsualQuiver};
pub use instance::InstanceFile;
pub use moves::{FlipEffect, ReductionKind};
pub use mutation::{FramedMatrix, MutationSeq};
pub use pprime::Certificate;
pub use word::{Letter, Origin, ShuffleWord};

use thiserror::Error;

/// Crate-wide error type. Variants tagged "internal" indicate a broken
/// invariant of the construction itself, never a property of valid input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a generalized Cartan matrix: {0}")]
    NotGeneralizedCartan(String),
    #[error("Cartan matrix is not symmetrizable: {0}")]
    NotSymmetrizable(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("letter {letter} out of range [1, {n}]")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("unknown closed string {0}")]
    UnknownString(ClosedStringId),
    #[error("unknown vertex {0}")]
    UnknownVertex(ClosedStringId),
    #[error("position {pos} out of range [1, {max}]")]
    PositionOutOfRange { pos: usize, max: usize },
    #[error("letters at positions {pos} and {} share an origin; not a flippable quadrilateral", .pos + 1)]
    NotAQuadrilateral { pos: usize },
    #[error("words are not shuffles of the same sequence pair over the same Cartan matrix")]
    NotSameShuffleClass,
    #[error("reduction {kind} not applicable: {reason}")]
    ReductionNotApplicable { kind: ReductionKind, reason: String },
    #[error("level {level} has no closed strings")]
    LevelEmpty { level: usize },
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkewSymmetric(ClosedStringId, ClosedStringId),
    #[error("entry {value} at ({x}, {z}) outside the coloured-quiver range")]
    EntryOutOfRange {
        x: ClosedStringId,
        z: ClosedStringId,
        value: i64,
    },
    #[error("strings {0} and {1} are on the same level")]
    SameLevel(ClosedStringId, ClosedStringId),
    #[error("internal: doubled entry {value} at ({x}, {z}) is odd")]
    IntegralityViolation {
        x: ClosedStringId,
        z: ClosedStringId,
        value: i64,
    },
    #[error("internal: symmetrizer check failed at ({0}, {1})")]
    SymmetrizerCheckFailed(ClosedStringId, ClosedStringId),
    #[error("internal: c-matrix column {0} lost sign coherence")]
    SignCoherenceViolation(ClosedStringId),
    #[error("internal: connection column of {0} is not sign-coherent")]
    InternalLemmaViolation(ClosedStringId),
    #[error("search depth {0} exceeded with unexplored states remaining")]
    DepthExceeded(usize),
    #[error("search space too large: {n} vertices (guard limit {limit})")]
    SearchTooLarge { n: usize, limit: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

impl Error {
    /// Stable machine-readable code, used in CLI error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotGeneralizedCartan(_) => "NotGeneralizedCartan",
            Error::NotSymmetrizable(_) => "NotSymmetrizable",
            Error::LengthMismatch(_) => "LengthMismatch",
            Error::LetterOutOfRange { .. } => "LetterOutOfRange",
            Error::UnknownString(_) => "UnknownString",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::PositionOutOfRange { .. } => "PositionOutOfRange",
            Error::NotAQuadrilateral { .. } => "NotAQuadrilateral",
            Error::NotSameShuffleClass => "NotSameShuffleClass",
            Error::ReductionNotApplicable { .. } => "ReductionNotApplicable",
            Error::LevelEmpty { .. } => "LevelEmpty",
            Error::NotSkewSymmetric(_, _) => "NotSkewSymmetric",
            Error::EntryOutOfRange { .. } => "EntryOutOfRange",
            Error::SameLevel(_, _) => "SameLevel",
            Error::IntegralityViolation { .. } => "IntegralityViolation",
            Error::SymmetrizerCheckFailed(_, _) => "SymmetrizerCheckFailed",
            Error::SignCoherenceViolation(_) => "SignCoherenceViolation",
            Error::InternalLemmaViolation(_) => "InternalLemmaViolation",
            Error::DepthExceeded(_) => "DepthExceeded",
            Error::SearchTooLarge { .. } => "SearchTooLarge",
            Error::InvalidInstance(_) => "InvalidInstance",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
