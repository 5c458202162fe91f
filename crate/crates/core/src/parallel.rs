//! Work distribution for subset sweeps and verification runs.
//!
//! Callers split their work into numbered units and get the per-unit results
//! back in unit order, whatever the worker count. With the `parallel` feature
//! disabled, or with a single job, units run sequentially on the caller's
//! thread.

#[cfg(feature = "parallel")]
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Executor {
    jobs: usize,
    #[cfg(feature = "parallel")]
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl Executor {
    pub fn sequential() -> Executor {
        Executor {
            jobs: 1,
            #[cfg(feature = "parallel")]
            pool: None,
        }
    }

    /// `jobs == 0` means one worker per available core.
    pub fn with_jobs(jobs: usize) -> Executor {
        let jobs = if jobs == 0 { available_parallelism() } else { jobs };
        if jobs <= 1 || !cfg!(feature = "parallel") {
            return Executor::sequential();
        }
        #[cfg(feature = "parallel")]
        {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .ok()
                .map(Arc::new);
            Executor { jobs, pool }
        }
        #[cfg(not(feature = "parallel"))]
        unreachable!()
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    /// Runs `f(0..units)` and returns the results in unit order.
    pub fn map<T, F>(&self, units: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            return pool.install(|| (0..units).into_par_iter().map(&f).collect());
        }
        (0..units).map(f).collect()
    }
}

impl Default for Executor {
    fn default() -> Self {
        Executor::with_jobs(0)
    }
}

pub fn available_parallelism() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_come_back_in_unit_order() {
        for exec in [Executor::sequential(), Executor::with_jobs(4)] {
            let out = exec.map(100, |i| i * i);
            assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
        }
    }

    #[test]
    fn single_job_is_sequential() {
        assert_eq!(Executor::with_jobs(1).jobs(), 1);
        assert_eq!(Executor::sequential().jobs(), 1);
    }
}
