//! Index-ordered range maps, optionally spread over a rayon pool.

use std::ops::RangeInclusive;

use rayon::prelude::*;

/// Maps `f` over `range` and returns results in index order. `threads <= 1`
/// runs on the calling thread.
pub fn map_range<T, F>(range: RangeInclusive<u64>, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    if threads <= 1 {
        return range.map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| range.into_par_iter().map(f).collect())
}
