//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper has a `_sequential` twin that is always compiled, so the
//! benches can compare both paths in one build. The unsuffixed helpers pick
//! rayon when the `parallel` feature is on.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map_range_sequential<T, F>(range: Range<u64>, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    range.map(f).collect()
}

pub fn sum_range_sequential<F>(range: Range<u64>, f: F) -> u64
where
    F: Fn(u64) -> u64,
{
    range.map(f).sum()
}

#[cfg(feature = "parallel")]
pub fn map_range_parallel<T, F>(range: Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Send + Sync,
{
    range.into_par_iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn sum_range_parallel<F>(range: Range<u64>, f: F) -> u64
where
    F: Fn(u64) -> u64 + Send + Sync,
{
    range.into_par_iter().map(f).sum()
}

/// Maps `f` over `range`, preserving order.
pub fn map_range<T, F>(range: Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        map_range_parallel(range, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_range_sequential(range, f)
    }
}

pub fn sum_range<F>(range: Range<u64>, f: F) -> u64
where
    F: Fn(u64) -> u64 + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        sum_range_parallel(range, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sum_range_sequential(range, f)
    }
}

/// Maps `f` over a slice of independent jobs, preserving order.
pub fn map_slice<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
