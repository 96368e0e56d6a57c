//! Order-preserving map over independent work items.
//!
//! With the `parallel` feature the work is spread over a rayon pool of the
//! requested size; without it, or with a single worker, items run in order on
//! the calling thread. Results always come back in input order, so output
//! built from them does not depend on the worker count.

/// Maps `f` over `items` on the calling thread.
pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Maps `f` over `items` with up to `workers` threads.
#[cfg(feature = "parallel")]
pub fn map_ordered<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;

    if workers <= 1 || items.len() <= 1 {
        return map_sequential(items, f);
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => map_sequential(items, f),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_ordered<T, R, F>(items: &[T], _workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_sequential(items, f)
}

/// Worker count used when the caller does not choose one.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
