//! Index-range map-reduce. With `std` the range is split across the rayon pool;
//! callers supply an exact, commutative `merge`, so the result does not depend on
//! the split.

pub(crate) fn map_reduce<A, I, F, M>(count: u64, identity: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, u64) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "std")]
    {
        use rayon::prelude::*;
        const CHUNK: u64 = 256;
        let chunks = count.div_ceil(CHUNK) as usize;
        (0..chunks)
            .into_par_iter()
            .fold(&identity, |mut acc, ch| {
                let lo = ch as u64 * CHUNK;
                for i in lo..count.min(lo + CHUNK) {
                    fold(&mut acc, i);
                }
                acc
            })
            .reduce(&identity, &merge)
    }
    #[cfg(not(feature = "std"))]
    {
        let _ = &merge;
        let mut acc = identity();
        for i in 0..count {
            fold(&mut acc, i);
        }
        acc
    }
}
