//! Data-parallel helpers.  With the `parallel` feature disabled every call
//! runs sequentially; results are order-preserving either way.

use serde::{Deserialize, Serialize};

/// How an embarrassingly parallel loop is executed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Execution {
    /// Parallel when the `parallel` feature is enabled and the batch is large enough.
    #[default]
    Auto,
    Sequential,
    /// Parallel when the `parallel` feature is enabled.
    Parallel,
}

const AUTO_THRESHOLD: usize = 256;

impl Execution {
    fn use_parallel(self, len: usize) -> bool {
        if !cfg!(feature = "parallel") {
            return false;
        }
        match self {
            Execution::Auto => len >= AUTO_THRESHOLD,
            Execution::Sequential => false,
            Execution::Parallel => true,
        }
    }
}

pub(crate) fn filter_map<T, U, F>(items: &[T], exec: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.use_parallel(items.len()) {
        use rayon::prelude::*;
        return items.par_iter().filter_map(f).collect();
    }
    let _ = exec.use_parallel(items.len());
    items.iter().filter_map(f).collect()
}

pub(crate) fn map<T, U, F>(items: &[T], exec: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    filter_map(items, exec, |x| Some(f(x)))
}
