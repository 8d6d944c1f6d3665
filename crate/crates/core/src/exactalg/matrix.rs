/// Row-major dense matrix. Entries are field elements of a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMatrix<E> {
    rows: usize,
    cols: usize,
    entries: Vec<E>,
}

impl<E: Clone> DenseMatrix<E> {
    pub fn new(rows: usize, cols: usize, entries: Vec<E>) -> Self {
        assert_eq!(
            rows * cols,
            entries.len(),
            "entry count must be rows * cols"
        );
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// A matrix with no rows.
    pub fn empty(cols: usize) -> Self {
        Self {
            rows: 0,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self {
            rows,
            cols,
            entries: vec![value; rows * cols],
        }
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            entries.extend(r);
        }
        Self {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<E> {
        self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[E]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn push_row(&mut self, row: &[E]) {
        assert_eq!(row.len(), self.cols, "ragged row");
        self.entries.extend_from_slice(row);
        self.rows += 1;
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entries[i * self.cols + j].clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn map<T: Clone>(&self, f: impl FnMut(&E) -> T) -> DenseMatrix<T> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transpose_swaps_shape() {
        let m = DenseMatrix::new(2, 3, vec![1, 2, 3, 4, 5, 6]);
        let t = m.transpose();
        assert_eq!((t.rows(), t.cols()), (3, 2));
        assert_eq!(t.row(0), &[1, 4]);
        assert_eq!(t.transpose(), m);
    }

    #[test]
    fn zero_column_rows_are_empty() {
        let m: DenseMatrix<i32> = DenseMatrix::new(3, 0, vec![]);
        assert!(m.row_iter().all(|r| r.is_empty()));
    }

    #[test]
    #[should_panic]
    fn ragged_rows_are_rejected() {
        DenseMatrix::from_rows(2, vec![vec![1, 2], vec![3]]);
    }
}
