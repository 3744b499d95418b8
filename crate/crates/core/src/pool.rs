//! Fan-out of independent work items.
//!
//! Analysis stages hand batches of independent items (shift indices,
//! per-column extremality tests, saturation tests) to a [`Pool`]. Results
//! always come back in input order, so the output does not depend on the
//! pool.

use alloc::vec::Vec;

pub trait Pool: Sync {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send;
}

/// Runs everything on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Pool for Sequential {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        items.iter().map(f).collect()
    }
}
