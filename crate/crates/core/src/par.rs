//! Data-parallel map helpers with a sequential fallback.
//!
//! Both hot paths of the crate (grid evaluation of distribution curves and
//! independent simulation drops) are embarrassingly parallel maps. They go
//! through these two functions so that disabling the `parallel` feature
//! swaps in plain sequential loops with identical results: work items carry
//! their own index or seed, and outputs are collected in input order, so
//! the feature flag can never change a number, only the wall-clock time.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n`, preserving index order in the output.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Maps `f` over `0..n`, preserving index order in the output.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Maps `f` over a slice, preserving element order in the output.
#[cfg(feature = "parallel")]
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Maps `f` over a slice, preserving element order in the output.
#[cfg(not(feature = "parallel"))]
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_indexed_preserves_order() {
        let out = map_indexed(1000, |i| i * i);
        assert_eq!(out.len(), 1000);
        assert!(out.iter().enumerate().all(|(i, &v)| v == i * i));
    }

    #[test]
    fn map_slice_preserves_order() {
        let items: Vec<f64> = (0..500).map(|i| i as f64 * 0.5).collect();
        let out = map_slice(&items, |x| x * 2.0);
        assert!(out.iter().zip(&items).all(|(o, i)| *o == i * 2.0));
    }
}
