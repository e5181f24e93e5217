//! Execution-mode dispatch for the data-parallel inner loops.
//!
//! Every parallelizable operation in this crate accepts a [`Mode`] through a
//! `*_mode` variant; the plain entry points use [`Mode::auto`]. With the
//! `parallel` feature enabled (the default) `Mode::Parallel` runs on the
//! rayon thread pool; without it, both modes run sequentially. All parallel
//! folds are exact and order-independent, so the result never depends on the
//! mode.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    Parallel,
}

impl Mode {
    /// Parallel when the `parallel` feature is compiled in.
    pub fn auto() -> Self {
        if cfg!(feature = "parallel") {
            Mode::Parallel
        } else {
            Mode::Sequential
        }
    }
}

/// Order-preserving map over a slice.
#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(mode: Mode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    match mode {
        Mode::Sequential => items.iter().map(f).collect(),
        Mode::Parallel => items.par_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(_mode: Mode, items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Map followed by an associative, commutative reduction.
#[cfg(feature = "parallel")]
pub fn map_reduce<T, U, F, R>(mode: Mode, items: &[T], identity: impl Fn() -> U + Sync + Send, f: F, reduce: R) -> U
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
    R: Fn(U, U) -> U + Sync + Send,
{
    use rayon::prelude::*;
    match mode {
        Mode::Sequential => items.iter().map(f).fold(identity(), &reduce),
        Mode::Parallel => items.par_iter().map(f).reduce(&identity, &reduce),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_reduce<T, U, F, R>(_mode: Mode, items: &[T], identity: impl Fn() -> U, f: F, reduce: R) -> U
where
    F: Fn(&T) -> U,
    R: Fn(U, U) -> U,
{
    items.iter().map(f).fold(identity(), &reduce)
}
