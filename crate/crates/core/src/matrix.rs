//! Dense and sparse integer matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::scalar::IntScalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T: IntScalar> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntScalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a: Vec<Vec<T>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                    a[i][j] = v / prev.clone();
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }
}

impl<T: IntScalar> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: IntScalar> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: IntScalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Row-major sparse matrix with a column index, sized for elimination.
#[derive(Clone, Debug)]
pub struct SparseMatrix<T: IntScalar> {
    rows: Vec<BTreeMap<usize, T>>,
    cols: Vec<BTreeSet<usize>>,
}

impl<T: IntScalar> SparseMatrix<T> {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BTreeMap::new(); rows],
            cols: vec![BTreeSet::new(); cols],
        }
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut m = Self::new(rows, cols);
        for (i, j, v) in triplets {
            let cur = m.get(i, j);
            m.set(i, j, cur + v);
        }
        m
    }

    pub fn from_dense(a: &Matrix<T>) -> Self {
        let mut m = Self::new(a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                m.set(i, j, a[(i, j)].clone());
            }
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.rows[i].get(&j).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        if v.is_zero() {
            self.rows[i].remove(&j);
            self.cols[j].remove(&i);
        } else {
            self.rows[i].insert(j, v);
            self.cols[j].insert(i);
        }
    }

    pub fn row_entries(&self, i: usize) -> &BTreeMap<usize, T> {
        &self.rows[i]
    }

    pub fn col_support(&self, j: usize) -> &BTreeSet<usize> {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn triplets(&self) -> Vec<(usize, usize, T)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v.clone())))
            .collect()
    }

    pub fn to_dense(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.n_rows(), self.n_cols());
        for (i, j, v) in self.triplets() {
            m[(i, j)] = v;
        }
        m
    }

    /// `row[dst] += k * row[src]`.
    pub fn row_add(&mut self, src: usize, dst: usize, k: &T) {
        let entries: Vec<(usize, T)> = self.rows[src].iter().map(|(j, v)| (*j, v.clone())).collect();
        for (j, v) in entries {
            let cur = self.get(dst, j);
            self.set(dst, j, cur + k.clone() * v);
        }
    }

    /// `(row[i], row[j]) <- (a row[i] + b row[j], c row[i] + d row[j])`.
    pub fn row_combine(&mut self, i: usize, j: usize, m: &[T; 4]) {
        let support: BTreeSet<usize> = self.rows[i].keys().chain(self.rows[j].keys()).copied().collect();
        for col in support {
            let x = self.get(i, col);
            let y = self.get(j, col);
            self.set(i, col, m[0].clone() * x.clone() + m[1].clone() * y.clone());
            self.set(j, col, m[2].clone() * x + m[3].clone() * y);
        }
    }

    pub fn row_negate(&mut self, i: usize) {
        let cols: Vec<usize> = self.rows[i].keys().copied().collect();
        for j in cols {
            let v = self.get(i, j);
            self.set(i, j, -v);
        }
    }

    /// `col[dst] += k * col[src]`.
    pub fn col_add(&mut self, src: usize, dst: usize, k: &T) {
        let rows: Vec<usize> = self.cols[src].iter().copied().collect();
        for i in rows {
            let v = self.get(i, src);
            let cur = self.get(i, dst);
            self.set(i, dst, cur + k.clone() * v);
        }
    }

    pub fn col_combine(&mut self, i: usize, j: usize, m: &[T; 4]) {
        let support: BTreeSet<usize> = self.cols[i].iter().chain(self.cols[j].iter()).copied().collect();
        for row in support {
            let x = self.get(row, i);
            let y = self.get(row, j);
            self.set(row, i, m[0].clone() * x.clone() + m[1].clone() * y.clone());
            self.set(row, j, m[2].clone() * x + m[3].clone() * y);
        }
    }
}
