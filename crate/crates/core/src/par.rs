//! Ordered map over a batch of independent work items.
//!
//! With the `parallel` feature and more than one worker the batch runs on a
//! dedicated rayon pool; otherwise it is a plain sequential map. Output order
//! always matches input order.

/// Maps `f` over `items` with up to `workers` threads, preserving order.
#[cfg(feature = "parallel")]
pub(crate) fn ordered_map<T, R, F>(items: Vec<T>, workers: usize, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;

    if workers <= 1 || items.len() <= 1 {
        return items.into_iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| items.into_par_iter().map(&f).collect()),
        // no threads available: degrade to the sequential path
        Err(_) => items.into_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn ordered_map<T, R, F>(items: Vec<T>, _workers: usize, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_iter().map(f).collect()
}

/// Whether this build can actually use more than one thread.
pub const PARALLEL_ENABLED: bool = cfg!(feature = "parallel");
