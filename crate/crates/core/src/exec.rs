//! Subset-space drivers with a sequential and a rayon-backed path.
//!
//! Subsets of an `n`-vertex graph are visited as `u64` index masks, so the
//! callers cap `n` at 63. With the `parallel` feature disabled,
//! [`Exec::Parallel`] runs sequentially.

use std::collections::BTreeSet;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Number of masks in `0..2^n` satisfying `pred`.
pub(crate) fn count_masks<F>(n: usize, exec: Exec, pred: F) -> u64
where
    F: Fn(u64) -> bool + Sync + Send,
{
    debug_assert!(n < 64);
    let end = 1u64 << n;
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..end).into_par_iter().filter(|&m| pred(m)).count() as u64,
        _ => (0..end).filter(|&m| pred(m)).count() as u64,
    }
}

/// The distinct values of `f` over masks in `0..2^n`, sorted.
pub(crate) fn collect_masks<T, F>(n: usize, exec: Exec, f: F) -> BTreeSet<T>
where
    T: Ord + Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    debug_assert!(n < 64);
    let end = 1u64 << n;
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..end)
            .into_par_iter()
            .filter_map(&f)
            .collect::<Vec<T>>()
            .into_iter()
            .collect(),
        _ => (0..end).filter_map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(count_masks(10, exec, |m| m.count_ones() == 3), 120);
            let got = collect_masks(6, exec, |m| Some(m.count_ones()));
            assert_eq!(
                got.into_iter().collect::<Vec<_>>(),
                (0..=6).collect::<Vec<_>>()
            );
        }
        assert_eq!(count_masks(0, Exec::default(), |_| true), 1);
    }
}
