//! Ordered data-parallel map.
//!
//! With the `parallel` feature the map runs on the current rayon pool;
//! without it, or through the `_seq` variants, it is a plain loop. Output
//! order always matches input order, which is what keeps downstream
//! reductions bitwise independent of the thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map_ordered<T, U, F>(items: &[T], f: F) -> Vec<U>
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
        map_ordered_seq(items, f)
    }
}

pub fn map_ordered_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

pub fn map_range<U, F>(len: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_range_seq(len, f)
    }
}

pub fn map_range_seq<U, F>(len: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..len).map(f).collect()
}

/// Whether the crate was built with rayon support.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_in_order() {
        let items: Vec<u64> = (0..10_000).collect();
        let a = map_ordered(&items, |x| x * x + 1);
        let b = map_ordered_seq(&items, |x| x * x + 1);
        assert_eq!(a, b);
        assert_eq!(map_range(257, |i| i * 3), map_range_seq(257, |i| i * 3));
    }
}
