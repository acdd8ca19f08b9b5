//! Exact combinatorics of orientable graph embeddings encoded as
//! permutation pairs.
//!
//! An embedding of a graph with half-edges `1..=n` is a pair of
//! permutations: the vertex permutation `pi` (rotating the half-edges at
//! each vertex counterclockwise) and the face permutation `s` obtained by
//! tracing face boundaries. The crate works with such pairs exactly —
//! all counts are arbitrary-precision integers, all probabilities exact
//! rationals — and offers:
//!
//! * [`perm`] — permutations, cycle types, set partitions;
//! * [`planeperm`] — plane permutations `(s, pi)`, their diagonal
//!   `D = s . pi^-1`, two-line arrays, localization at a vertex and
//!   inflation back;
//! * [`embedding`] — rotation systems, hypermaps, genus, faces, a small
//!   text format for embeddings, exhaustive embedding enumeration;
//! * [`counting`] — the counts `p_k^lambda(n)` of `n`-cycle-producing
//!   factorizations (brute-force oracle, recurrence, and closed forms),
//!   with the one-face specialisation and two-sided bounds;
//! * [`reembed`] — the local genus distribution of reembedding a single
//!   vertex, genus ranges, minimum/maximum-genus certificates, and
//!   one-face probabilities;
//! * [`selftest`] — exhaustive cross-validation sweeps pitting every
//!   formula against an independent brute-force enumeration.
//!
//! Enumeration loops are data-parallel via `rayon` when the default
//! `parallel` feature is on; every parallel entry point has a sequential
//! twin so results can be compared (see the `parallel_vs_sequential`
//! bench).

pub mod caps;
pub mod counting;
pub mod embedding;
pub mod error;
pub mod perm;
pub mod planeperm;
pub mod reembed;
pub mod selftest;

mod par;

pub use error::{Error, Result};
