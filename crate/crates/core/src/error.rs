//! Crate-wide error type.
//!
//! Every fallible operation in this crate returns [`Result`]. Variants carry
//! enough context to print a one-line diagnostic; none of them wrap other
//! error types because all inputs are plain text and small integers.

use thiserror::Error;

/// Errors raised by permutation, embedding, counting and reembedding code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation combined two objects defined on ground sets of
    /// different sizes.
    #[error("size mismatch: left operand has size {left}, right operand has size {right}")]
    SizeMismatch { left: usize, right: usize },

    /// An image list or cycle list mentioned the same label twice.
    #[error("duplicate label {0}")]
    DuplicateLabel(usize),

    /// A label was outside the ground set 1..=n.
    #[error("label {label} out of range 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },

    /// A ground set must contain at least one element.
    #[error("empty ground set")]
    EmptyGroundSet,

    /// Cycle notation could not be parsed.
    #[error("malformed cycle notation: {0}")]
    MalformedCycles(String),

    /// Text that should have been a number or a partition was not.
    #[error("invalid number: {0}")]
    InvalidNumber(String),

    /// A partition was requested with a zero part or in invalid shape.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// The set of blocks handed to a partition constructor did not
    /// partition 1..=n.
    #[error("blocks do not partition the ground set: {0}")]
    InvalidBlocks(String),

    /// An operation that needs a one-face (single s-cycle) plane
    /// permutation was applied to a multi-cycle one.
    #[error("operation requires a cyclic plane permutation (s must be a single cycle)")]
    NotCyclic,

    /// The requested half-edge set is not a cycle of the vertex permutation.
    #[error("half-edge set {0} is not a vertex (not a single pi-cycle)")]
    NotAPiBlock(String),

    /// A two-line array had a bottom row that is not a bijection of its
    /// top row.
    #[error("invalid two-line array: {0}")]
    InvalidTwoLine(String),

    /// A local rearrangement handed to inflation disagrees with the
    /// diagonal that localization produced.
    #[error("local diagonal does not match the diagonal of the localization: {0}")]
    DiagonalMismatch(String),

    /// A vertex name was looked up that the map does not contain.
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    /// Construction of a map required a fixed-point-free involution.
    #[error("edge pairing is not a fixed-point-free involution: {0}")]
    NotAnInvolution(String),

    /// The half-edge action of the edge pairing and the rotations does
    /// not reach every half-edge.
    #[error("embedding is not connected")]
    Disconnected,

    /// A rotation replacement listed the wrong half-edge set.
    #[error("rotation for vertex {vertex:?} must list exactly its half-edges: {detail}")]
    WrongRotation { vertex: String, detail: String },

    /// Text input (an embedding file) failed to parse.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An enumeration would exceed the configured cap.
    #[error("{what} exceeds the cap: {needed} > {cap}")]
    CapExceeded {
        what: String,
        needed: String,
        cap: String,
    },

    /// The cycle type corresponds to odd permutations, so no
    /// factorization into two full cycles exists.
    #[error("cycle type {0} has odd sign; no single-cycle factorization exists")]
    ParityExcluded(String),

    /// A division that must be exact left a remainder. This indicates a
    /// corrupted table or an internal bug and is always fatal.
    #[error("inexact division in {0}")]
    InexactDivision(String),

    /// Cross-validation failure: two independent computations of the same
    /// quantity disagreed. Always fatal.
    #[error("independent computations disagree: {0}")]
    MethodDisagreement(String),

    /// A precondition on an argument value was violated.
    #[error("{0}")]
    InvalidArgument(String),

    /// Two vertices share a face where an operation requires
    /// face-disjointness.
    #[error("vertices {0:?} and {1:?} share an incident face")]
    NotFaceDisjoint(String, String),

    /// The embedding must have exactly one face for this operation.
    #[error("embedding has {0} faces; operation requires a one-face embedding")]
    NotOneFace(usize),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
