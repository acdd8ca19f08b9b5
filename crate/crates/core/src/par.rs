//! Tiny fork/join helper shared by the enumeration loops.
//!
//! Oracles split their search space into independent branches (for
//! example, by the image of the first symbol) and merge per-branch
//! tallies. The merge operations used here are commutative and
//! associative, so the parallel and sequential results are identical.

/// Maps `work` over `items` and folds the results with `merge`.
///
/// Runs on the rayon pool when the `parallel` feature is enabled and
/// `parallel` is true; otherwise runs sequentially in order. `merge` must
/// be associative and commutative for the two modes to agree.
pub(crate) fn map_merge<T, R, F, M>(items: Vec<T>, parallel: bool, work: F, merge: M, init: R) -> R
where
    T: Send,
    R: Send + Sync + Clone,
    F: Fn(T) -> R + Sync + Send,
    M: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items
            .into_par_iter()
            .map(work)
            .reduce(|| init.clone(), &merge);
    }
    let _ = parallel;
    items.into_iter().map(work).fold(init, merge)
}
