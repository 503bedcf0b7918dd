//! Execution strategy for the enumeration-heavy operations.
//!
//! All parallel work in the crate is an ordered map over an independent
//! partition (first element of a permutation, or the middle value `b`).
//! Results are collected in partition order, so output never depends on
//! the number of worker threads. Without the `parallel` feature every
//! strategy runs on the calling thread.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `items`, returning results in input order.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.into_par_iter().map(f).collect(),
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// Like [`Exec::map`], but hands results to `sink` in input order one
    /// batch at a time, so only a batch of results is held in memory.
    pub fn for_each_ordered<T, R, F, S, E>(self, items: Vec<T>, f: F, mut sink: S) -> Result<(), E>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
        S: FnMut(R) -> Result<(), E>,
    {
        let width = self.batch_width();
        let mut items = items.into_iter();
        loop {
            let batch: Vec<T> = items.by_ref().take(width).collect();
            if batch.is_empty() {
                return Ok(());
            }
            for r in self.map(batch, &f) {
                sink(r)?;
            }
        }
    }

    fn batch_width(self) -> usize {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => 4 * rayon::current_num_threads(),
            _ => 1,
        }
    }
}

/// Runs `f` with at most `threads` worker threads for parallel sections.
/// `None` uses the global pool.
pub fn with_threads<R, F>(threads: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    if let Some(t) = threads {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
        {
            Ok(pool) => return pool.install(f),
            Err(_) => return f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    f()
}
