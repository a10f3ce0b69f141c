//! Execution strategy for sweeps over independent tasks.
//!
//! With the `parallel` feature (on by default) work fans out over a rayon pool
//! sized by `jobs`. Without it, or with [`Exec::Sequential`], tasks run in
//! order on the calling thread. Results always come back in index order.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// `jobs == 0` lets the pool pick the thread count.
    Parallel {
        jobs: usize,
    },
}

impl Default for Exec {
    fn default() -> Self {
        Exec::Parallel { jobs: 0 }
    }
}

impl Exec {
    pub fn from_jobs(jobs: usize) -> Self {
        if jobs == 1 {
            Exec::Sequential
        } else {
            Exec::Parallel { jobs }
        }
    }

    /// True when this build can actually run tasks concurrently.
    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && matches!(self, Exec::Parallel { .. })
    }

    /// Evaluates `f(0), ..., f(n - 1)` and returns the results in order.
    pub fn map_indices<R, F>(&self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel { jobs } => {
                use rayon::prelude::*;
                let run = || (0..n).into_par_iter().map(&f).collect();
                if *jobs == 0 {
                    run()
                } else {
                    match rayon::ThreadPoolBuilder::new().num_threads(*jobs).build() {
                        Ok(pool) => pool.install(run),
                        Err(_) => run(),
                    }
                }
            }
            _ => (0..n).map(f).collect(),
        }
    }

    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        self.map_indices(items.len(), |i| f(&items[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_preserve_order() {
        let seq = Exec::Sequential.map_indices(100, |i| i * i);
        let par = Exec::Parallel { jobs: 3 }.map_indices(100, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(seq[7], 49);
    }
}
