//! Data-parallel helpers with a sequential fallback.
//!
//! Every floating-point reduction goes through [`map_collect`] or
//! [`fold_blocks`], which fix the association order independently of the
//! worker count. Results are therefore bit-identical with one thread, eight
//! threads, or the `parallel` feature disabled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of contiguous blocks used by [`fold_blocks`].
pub const BLOCKS: usize = 32;

/// `(0..n).map(f).collect()`, evaluated in parallel when enabled.
pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Map over a slice, preserving order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Integer sum over `0..n`; order-independent so any split is fine.
pub fn sum_u64<F>(n: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).sum()
    }
}

/// Sum a slice of floats left to right.
pub fn ordered_sum(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |acc, v| acc + v)
}

/// Accumulate `len`-long vectors over `0..n`.
///
/// The index range is cut into at most [`BLOCKS`] contiguous blocks. Each
/// block folds its indices in increasing order into its own accumulator;
/// the block accumulators are then added in block order.
pub fn fold_blocks<F>(n: usize, len: usize, f: F) -> Vec<f64>
where
    F: Fn(usize, &mut Vec<u32>, &mut [f64]) + Sync + Send,
{
    let blocks = BLOCKS.min(n.max(1));
    let per = n.div_ceil(blocks);
    let partials = map_collect(blocks, |b| {
        let mut acc = vec![0.0; len];
        let mut scratch = Vec::new();
        let end = ((b + 1) * per).min(n);
        for i in (b * per)..end {
            f(i, &mut scratch, &mut acc);
        }
        acc
    });
    let mut out = vec![0.0; len];
    for p in &partials {
        for (o, v) in out.iter_mut().zip(p) {
            *o += v;
        }
    }
    out
}

/// Configure the global worker pool. `0` means one worker per core.
///
/// Only the first call has an effect; later calls are ignored.
pub fn init_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
    }
}
