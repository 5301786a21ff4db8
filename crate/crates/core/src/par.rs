//! Ensemble-level parallelism.
//!
//! With the `parallel` feature, [`Execution::Parallel`] evaluates ensemble
//! members on a rayon pool; without it every mode runs sequentially. Results
//! are always returned in member order, so output never depends on the
//! scheduler.

use crate::error::{QcaError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Global rayon pool.
    #[default]
    Parallel,
    /// Dedicated pool with a fixed worker count.
    Threads(usize),
}

impl Execution {
    pub fn is_parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Evaluates `f(0..count)` and returns the results in index order.
pub fn map_indexed<T, F>(count: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..count).map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..count).into_par_iter().map(f).collect()
        }
        #[cfg(feature = "parallel")]
        Execution::Threads(threads) => {
            use rayon::prelude::*;
            match rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build()
            {
                Ok(pool) => pool.install(|| (0..count).into_par_iter().map(f).collect()),
                Err(_) => (0..count).map(f).collect(),
            }
        }
        #[cfg(not(feature = "parallel"))]
        Execution::Parallel | Execution::Threads(_) => (0..count).map(f).collect(),
    }
}

/// Fallible variant of [`map_indexed`]; the first error in index order wins.
pub fn try_map_indexed<T, F>(count: usize, exec: Execution, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    map_indexed(count, exec, f)
        .into_iter()
        .collect::<std::result::Result<Vec<T>, QcaError>>()
}
