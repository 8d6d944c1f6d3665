//! Shared inputs for the benchmarks.

use gapvec_core::{DenseMatrix, Field, SeededSampler};

/// A `rows × cols` matrix of uniform field elements, fixed by `seed`.
pub fn random_matrix<F: Field>(
    field: &F,
    rows: usize,
    cols: usize,
    seed: u64,
) -> DenseMatrix<F::Elem> {
    let mut s = SeededSampler::new(seed, 0);
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| field.sample(&mut s)).collect())
        .collect();
    DenseMatrix::from_rows(cols, entries)
}
