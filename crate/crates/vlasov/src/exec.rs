//! Data-parallel helpers with a sequential fallback. Work is handed out
//! in row batches so one task owns its scratch and amortizes scheduling;
//! per-row results do not depend on the batching, so the two paths (and
//! any thread count) are bit-identical.

#[cfg(feature = "parallel")]
pub(crate) fn for_each_row_batch<T, F>(data: &mut [T], row: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync,
{
    use rayon::prelude::*;
    let nrows = data.len() / row.max(1);
    let batch_rows = nrows
        .div_ceil(rayon::current_num_threads().max(1) * 4)
        .max(1);
    data.par_chunks_mut(row * batch_rows)
        .enumerate()
        .for_each(|(b, chunk)| f(b * batch_rows, chunk));
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn for_each_row_batch<T, F>(data: &mut [T], row: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync,
{
    let _ = row;
    f(0, data);
}
