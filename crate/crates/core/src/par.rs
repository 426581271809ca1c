//! Row-sharded map with a deterministic merge order.
//!
//! Shards map to a `Vec` in input order and callers fold that vector
//! sequentially, so integer results are identical and floating results
//! bitwise-identical for any thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn map_ordered<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_ordered<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    F: Fn(I) -> T,
{
    items.into_iter().map(f).collect()
}
