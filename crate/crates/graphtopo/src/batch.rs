//! Parallel per-item work with results in input order.

use rayon::prelude::*;

use crate::error::{IoError, Result};

pub const THREADS_ENV: &str = "TOPO_THREADS";

/// `TOPO_THREADS` wins over the flag; 0 or nothing means available parallelism.
pub fn resolve_threads(flag: Option<usize>) -> Result<usize> {
    let from_env = match std::env::var(THREADS_ENV) {
        Ok(s) if !s.trim().is_empty() => Some(
            s.trim()
                .parse::<usize>()
                .map_err(|_| IoError::Invalid(format!("{THREADS_ENV} must be a non-negative integer, got {s:?}")))?,
        ),
        _ => None,
    };
    Ok(match from_env.or(flag) {
        Some(n) if n > 0 => n,
        _ => std::thread::available_parallelism().map_or(1, |n| n.get()),
    })
}

/// Applies `f` to every item on a pool of `threads` workers. Output order
/// matches input order; the first error in input order is returned.
pub fn par_map<T, U, F>(items: &[T], threads: usize, f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| IoError::Invalid(format!("thread pool: {e}")))?;
    let results: Vec<Result<U>> = pool.install(|| items.par_iter().map(&f).collect());
    results.into_iter().collect()
}
