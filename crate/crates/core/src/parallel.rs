//! Order-preserving map over trial indices.
//!
//! Results come back indexed by trial, so any reduction done by the caller in
//! index order is bitwise independent of the worker count.

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, F>(count: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, F>(count: u64, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    (0..count).map(f).collect()
}
