use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuildError, ThreadPoolBuilder};
use tvsum_core::statesum::Executor;

/// Rayon-backed executor on a private pool. `collect` on an indexed parallel
/// iterator keeps input order, so results do not depend on the thread count.
pub struct Parallel {
    pool: ThreadPool,
}

impl Parallel {
    /// `threads == 0` lets rayon pick the number of threads.
    pub fn new(threads: usize) -> Result<Self, ThreadPoolBuildError> {
        let pool = ThreadPoolBuilder::new().num_threads(threads).build()?;
        Ok(Parallel { pool })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for Parallel {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        self.pool.install(|| items.par_iter().map(f).collect())
    }
}

impl std::fmt::Debug for Parallel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Parallel").field("threads", &self.threads()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tvsum_core::statesum::Sequential;

    #[test]
    fn matches_sequential_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let f = |x: &u64| x.wrapping_mul(2654435761) % 97;
        let par = Parallel::new(4).unwrap();
        assert_eq!(par.threads(), 4);
        assert_eq!(par.map(&xs, f), Sequential.map(&xs, f));
    }
}
