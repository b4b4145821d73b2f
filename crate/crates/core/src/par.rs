//! Execution mode for the data-parallel loops (codeword enumeration, group
//! closure, Molien summation).
//!
//! With the `parallel` feature (default) `Exec::Parallel` runs on the rayon
//! global pool; without it every mode runs sequentially. All reductions used
//! with these helpers are exact and merged in input order, so results never
//! depend on the mode or on the number of threads.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Order-preserving map over a slice.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving map over `0..len`.
    pub fn map_range<R, F>(self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Folds `work` over `0..chunks` and merges the partial accumulators.
    /// `merge` must be associative and commutative (sums, minima, ...) since
    /// the grouping of chunks is up to the scheduler.
    pub fn fold_chunks<A, I, W, M>(self, chunks: usize, init: I, work: W, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        W: Fn(&mut A, usize) + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..chunks)
                .into_par_iter()
                .fold(&init, |mut acc, c| {
                    work(&mut acc, c);
                    acc
                })
                .reduce(&init, &merge);
        }
        #[cfg(not(feature = "parallel"))]
        let _ = merge;
        let mut acc = init();
        for c in 0..chunks {
            work(&mut acc, c);
        }
        acc
    }
}
