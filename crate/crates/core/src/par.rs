//! Data-parallel helpers. With the `parallel` feature these run on rayon; without it they
//! fall back to plain sequential iteration with identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `f` applied to each element of `items`, results in input order.
pub fn map_collect<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
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

/// `f` over `0..n`, results in index order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
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

/// Associative fold of `f(i)` over `0..n` with `combine`.
pub fn reduce_range<R, F, C>(n: u64, identity: R, f: F, combine: C) -> R
where
    R: Send + Sync + Clone,
    F: Fn(u64) -> R + Sync + Send,
    C: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map(f)
            .reduce(|| identity.clone(), &combine)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).fold(identity, combine)
    }
}

/// Runs `op` on a pool of `workers` threads (`0` = rayon default). Sequential builds ignore
/// the worker count.
pub fn with_workers<R: Send, F: FnOnce() -> R + Send>(workers: usize, op: F) -> R {
    #[cfg(feature = "parallel")]
    {
        match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        op()
    }
}

pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
