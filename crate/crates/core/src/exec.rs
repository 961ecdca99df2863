//! Sequential / data-parallel execution switch for batch workloads.

/// How a batch of independent work items is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses the global rayon pool. Without the `parallel` feature this is
    /// identical to [`Execution::Sequential`].
    #[default]
    Parallel,
}

impl Execution {
    /// True when this build can actually run work items concurrently.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Maps `f` over `0..len`, preserving index order in the output.
    pub fn map_range<T, F>(self, len: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Maps `f` over `0..len` and folds the results with an associative,
    /// commutative `combine`.
    pub fn map_reduce<T, F, R>(self, len: u64, identity: T, f: F, combine: R) -> T
    where
        T: Send + Sync + Clone,
        F: Fn(u64) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return (0..len)
                .into_par_iter()
                .map(&f)
                .reduce(|| identity.clone(), &combine);
        }
        (0..len).map(f).fold(identity, combine)
    }
}
