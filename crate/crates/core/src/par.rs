//! Iteration that is parallel with the `parallel` feature and sequential
//! without it. Closures passed to `map`/`filter` must be `Fn + Sync`.

#[cfg(feature = "parallel")]
pub(crate) use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) trait MaybeParIter: IntoParallelIterator + Sized {
    fn maybe_par_iter(self) -> Self::Iter {
        self.into_par_iter()
    }
}

#[cfg(feature = "parallel")]
impl<I: IntoParallelIterator> MaybeParIter for I {}

#[cfg(not(feature = "parallel"))]
pub(crate) trait MaybeParIter: IntoIterator + Sized {
    fn maybe_par_iter(self) -> Self::IntoIter {
        self.into_iter()
    }
}

#[cfg(not(feature = "parallel"))]
impl<I: IntoIterator> MaybeParIter for I {}
