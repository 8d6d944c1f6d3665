use super::field::Field;
use super::matrix::DenseMatrix;

/// `M · v` for a column vector `v`.
pub fn apply<F: Field>(f: &F, m: &DenseMatrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(m.cols(), v.len());
    m.row_iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
        })
        .collect()
}

/// Rank by row echelon reduction with modular (or field) inverses.
pub fn gauss_rank<F: Field>(f: &F, m: &DenseMatrix<F::Elem>) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut a = m.entries().to_vec();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| !f.is_zero(&a[i * cols + col])) else {
            continue;
        };
        if piv != rank {
            for k in col..cols {
                a.swap(piv * cols + k, rank * cols + k);
            }
        }
        let inv = f
            .inv(&a[rank * cols + col])
            .expect("nonzero pivot is invertible");
        let (head, tail) = a.split_at_mut((rank + 1) * cols);
        let pivot_row = &head[rank * cols..];
        for row in tail.chunks_exact_mut(cols) {
            if f.is_zero(&row[col]) {
                continue;
            }
            let factor = f.mul(&row[col], &inv);
            for k in col..cols {
                let t = f.mul(&factor, &pivot_row[k]);
                row[k] = f.sub(&row[k], &t);
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref<F: Field>(f: &F, a: &mut [F::Elem], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !f.is_zero(&a[i * cols + col])) else {
            continue;
        };
        for k in 0..cols {
            a.swap(piv * cols + k, r * cols + k);
        }
        let inv = f
            .inv(&a[r * cols + col])
            .expect("nonzero pivot is invertible");
        for k in col..cols {
            a[r * cols + k] = f.mul(&a[r * cols + k], &inv);
        }
        for i in 0..rows {
            if i == r || f.is_zero(&a[i * cols + col]) {
                continue;
            }
            let factor = a[i * cols + col].clone();
            for k in col..cols {
                let t = f.mul(&factor, &a[r * cols + k]);
                a[i * cols + k] = f.sub(&a[i * cols + k], &t);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Null-space basis read off the reduced row echelon form: one row per free
/// column, with a 1 in that column.
pub fn kernel_basis_rref<F: Field>(f: &F, m: &DenseMatrix<F::Elem>) -> DenseMatrix<F::Elem> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.entries().to_vec();
    let pivots = rref(f, &mut a, rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = DenseMatrix::empty(cols);
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(&a[r * cols + free]);
        }
        basis.push_row(&v);
    }
    basis
}
