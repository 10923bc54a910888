//! Execution policy for the data-parallel inner loops.
//!
//! With the `parallel` feature enabled, [`Execution::Parallel`] dispatches to
//! rayon. Without it, both variants take the sequential path. Every routine
//! that accepts an [`Execution`] produces bit-identical output under either
//! policy: parallelism is only ever applied across independent items, and
//! any reduction is over integers or happens in a fixed order afterwards.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many independent items a loop stays sequential.
pub(crate) const MIN_PARALLEL_LEN: usize = 1 << 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this policy actually runs on the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Applies `f` to `(lo[i], hi[i])` for every `i`.
    pub(crate) fn for_each_pair<T, F>(self, lo: &mut [T], hi: &mut [T], f: F)
    where
        T: Send,
        F: Fn(&mut T, &mut T) + Sync + Send,
    {
        debug_assert_eq!(lo.len(), hi.len());
        #[cfg(feature = "parallel")]
        if self.is_parallel() && lo.len() >= MIN_PARALLEL_LEN {
            lo.par_iter_mut()
                .zip(hi.par_iter_mut())
                .for_each(|(a, b)| f(a, b));
            return;
        }
        lo.iter_mut().zip(hi.iter_mut()).for_each(|(a, b)| f(a, b));
    }

    /// Applies `f` to every chunk of `chunk_len` elements.
    pub(crate) fn for_each_chunk<T, F>(self, items: &mut [T], chunk_len: usize, f: F)
    where
        T: Send,
        F: Fn(&mut [T]) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && items.len() / chunk_len > 1 && items.len() >= MIN_PARALLEL_LEN {
            items.par_chunks_mut(chunk_len).for_each(f);
            return;
        }
        items.chunks_mut(chunk_len).for_each(f);
    }

    /// Order-preserving map.
    pub(crate) fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Runs `f` on every element in place.
    pub(crate) fn for_each_mut<T, F>(self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(&mut T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            items.par_iter_mut().for_each(f);
            return;
        }
        items.iter_mut().for_each(f);
    }
}
