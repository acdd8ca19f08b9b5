//! Resource caps for the enumeration entry points.
//!
//! Factorial growth turns innocent-looking inputs into multi-hour runs:
//! a degree-`d` vertex has `(d - 1)!` rotations, the `p_k` oracle visits
//! `(n - 1)!` long cycles, and a graph with vertex degrees `d_1, ..., d_v`
//! has `prod (d_i - 1)!` embeddings. Every brute-force entry point
//! therefore takes a [`Caps`] and refuses, with [`Error::CapExceeded`],
//! any request whose enumeration would be larger than the cap — callers
//! that really want a long run raise the cap explicitly.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Limits on the sizes of brute-force enumerations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest vertex degree whose `(d - 1)!` rotations may be enumerated.
    pub vertex_degree: usize,
    /// Largest `n` for which the `p_k` oracle may walk all `(n - 1)!`
    /// long cycles.
    pub pk_n: usize,
    /// Largest number of whole-graph embeddings that may be enumerated.
    pub embeddings: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            vertex_degree: 12,
            pk_n: 10,
            embeddings: 10_000_000,
        }
    }
}

impl Caps {
    /// Caps with every limit raised by factor `scale` (vertex degree and
    /// oracle size grow by `log2(scale)` steps, matching their factorial
    /// cost curves). Used by `--force`-style overrides.
    pub fn scaled(scale: u64) -> Self {
        let steps = (64 - scale.leading_zeros()) as usize;
        let base = Caps::default();
        Caps {
            vertex_degree: base.vertex_degree + steps,
            pk_n: base.pk_n + steps,
            embeddings: base.embeddings.saturating_mul(scale.max(1)),
        }
    }

    /// Checks that a degree-`d` rotation enumeration is allowed.
    pub fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.vertex_degree {
            return Err(Error::CapExceeded {
                what: format!("vertex degree {d} ({}! rotations)", d.saturating_sub(1)),
                needed: d.to_string(),
                cap: self.vertex_degree.to_string(),
            });
        }
        Ok(())
    }

    /// Checks that an `(n - 1)!`-cycle oracle run is allowed.
    pub fn check_pk_n(&self, n: usize) -> Result<()> {
        if n > self.pk_n {
            return Err(Error::CapExceeded {
                what: format!("oracle ground set {n} ({}! long cycles)", n.saturating_sub(1)),
                needed: n.to_string(),
                cap: self.pk_n.to_string(),
            });
        }
        Ok(())
    }

    /// Checks that enumerating `total` embeddings is allowed.
    pub fn check_embeddings(&self, total: &BigUint) -> Result<()> {
        if *total > BigUint::from(self.embeddings) {
            return Err(Error::CapExceeded {
                what: "embedding enumeration".into(),
                needed: total.to_string(),
                cap: self.embeddings.to_string(),
            });
        }
        Ok(())
    }
}

/// Number of embeddings of a graph with the given vertex degrees:
/// `prod (d_i - 1)!`.
pub fn embedding_count(degrees: &[usize]) -> BigUint {
    let mut total = BigUint::one();
    for &d in degrees {
        for f in 2..d {
            total *= BigUint::from(f);
        }
    }
    total
}
