//! Data-parallel map used by the batch entry points. With the `parallel`
//! feature (default) work is spread over the rayon pool; without it the same
//! calls run sequentially. Results are always returned in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `items.map(f)` preserving order.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
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

/// Smallest-index element for which `f` returns `Some`, evaluated in
/// parallel when enabled; the answer does not depend on scheduling.
pub fn find_first<T, U, F>(items: &[T], f: F) -> Option<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().find_map(f)
    }
}

/// True when the crate was built with the rayon backend.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
