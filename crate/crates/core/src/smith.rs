//! Smith normal form of sparse integer matrices with logged unimodular transforms.
//!
//! The reduction pivots on the entry of least magnitude (ties broken by Markowitz fill
//! estimate), clears its row and column with Bezout combinations, and finally repairs the
//! divisibility chain on the nonunit diagonal. Every row and column operation is recorded,
//! so `U` and `V` with `U·A·V = D` can be materialized on demand, and a vector can be pushed
//! through `V` without ever forming it.

use std::collections::BTreeSet;

use crate::matrix::{Matrix, SparseMatrix};
use crate::scalar::{extended_gcd, IntScalar};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Op<T> {
    /// `line[dst] += k * line[src]`
    Add { src: usize, dst: usize, k: T },
    /// `(line[i], line[j]) <- (m0 line[i] + m1 line[j], m2 line[i] + m3 line[j])`
    Combine { i: usize, j: usize, m: [T; 4] },
    Negate(usize),
}

#[derive(Clone, Debug)]
pub struct SmithForm<T: IntScalar> {
    n_rows: usize,
    n_cols: usize,
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_rank`, all positive.
    diagonal: Vec<T>,
    row_ops: Vec<Op<T>>,
    col_ops: Vec<Op<T>>,
    /// Row `k` of `D` is row `row_perm[k]` of the transformed matrix.
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
}

impl<T: IntScalar> SmithForm<T> {
    pub fn rows(&self) -> usize {
        self.n_rows
    }

    pub fn cols(&self) -> usize {
        self.n_cols
    }

    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[T] {
        &self.diagonal
    }

    /// Nonunit nonzero diagonal entries: the torsion invariant factors of the cokernel.
    pub fn invariant_factors(&self) -> Vec<T> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Rank of the free part of the cokernel `Z^cols / rowspace`.
    pub fn free_rank(&self) -> usize {
        self.n_cols - self.rank()
    }

    pub fn cokernel_is_trivial(&self) -> bool {
        self.free_rank() == 0 && self.diagonal.iter().all(T::is_one)
    }

    /// Computes `x·V` for a row vector `x` of length `cols`.
    pub fn apply_v(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.n_cols);
        let mut y = x.to_vec();
        for op in &self.col_ops {
            apply_to_vector(&mut y, op);
        }
        self.col_perm.iter().map(|&j| y[j].clone()).collect()
    }

    pub fn u(&self) -> Matrix<T> {
        let mut u = Matrix::identity(self.n_rows);
        for op in &self.row_ops {
            apply_row_op(&mut u, op);
        }
        let mut out = Matrix::zeros(self.n_rows, self.n_rows);
        for (k, &r) in self.row_perm.iter().enumerate() {
            for j in 0..self.n_rows {
                out[(k, j)] = u[(r, j)].clone();
            }
        }
        out
    }

    pub fn v(&self) -> Matrix<T> {
        let mut v = Matrix::identity(self.n_cols);
        for op in &self.col_ops {
            apply_col_op(&mut v, op);
        }
        let mut out = Matrix::zeros(self.n_cols, self.n_cols);
        for (k, &c) in self.col_perm.iter().enumerate() {
            for i in 0..self.n_cols {
                out[(i, k)] = v[(i, c)].clone();
            }
        }
        out
    }

    pub fn d(&self) -> Matrix<T> {
        let mut d = Matrix::zeros(self.n_rows, self.n_cols);
        for (k, v) in self.diagonal.iter().enumerate() {
            d[(k, k)] = v.clone();
        }
        d
    }
}

fn apply_to_vector<T: IntScalar>(y: &mut [T], op: &Op<T>) {
    match op {
        Op::Add { src, dst, k } => {
            let v = y[*dst].clone() + k.clone() * y[*src].clone();
            y[*dst] = v;
        }
        Op::Combine { i, j, m } => {
            let (a, b) = (y[*i].clone(), y[*j].clone());
            y[*i] = m[0].clone() * a.clone() + m[1].clone() * b.clone();
            y[*j] = m[2].clone() * a + m[3].clone() * b;
        }
        Op::Negate(i) => {
            let v = -y[*i].clone();
            y[*i] = v;
        }
    }
}

fn apply_row_op<T: IntScalar>(u: &mut Matrix<T>, op: &Op<T>) {
    for c in 0..u.cols() {
        let mut col: Vec<T> = (0..u.rows()).map(|r| u[(r, c)].clone()).collect();
        apply_to_vector(&mut col, op);
        for (r, v) in col.into_iter().enumerate() {
            u[(r, c)] = v;
        }
    }
}

fn apply_col_op<T: IntScalar>(v: &mut Matrix<T>, op: &Op<T>) {
    for r in 0..v.rows() {
        let mut row = v.row(r).to_vec();
        apply_to_vector(&mut row, op);
        for (c, x) in row.into_iter().enumerate() {
            v[(r, c)] = x;
        }
    }
}

struct Reducer<T: IntScalar> {
    a: SparseMatrix<T>,
    row_ops: Vec<Op<T>>,
    col_ops: Vec<Op<T>>,
}

impl<T: IntScalar> Reducer<T> {
    fn row_add(&mut self, src: usize, dst: usize, k: T) {
        self.a.row_add(src, dst, &k);
        self.row_ops.push(Op::Add { src, dst, k });
    }

    fn col_add(&mut self, src: usize, dst: usize, k: T) {
        self.a.col_add(src, dst, &k);
        self.col_ops.push(Op::Add { src, dst, k });
    }

    fn row_combine(&mut self, i: usize, j: usize, m: [T; 4]) {
        self.a.row_combine(i, j, &m);
        self.row_ops.push(Op::Combine { i, j, m });
    }

    fn col_combine(&mut self, i: usize, j: usize, m: [T; 4]) {
        self.a.col_combine(i, j, &m);
        self.col_ops.push(Op::Combine { i, j, m });
    }

    fn row_negate(&mut self, i: usize) {
        self.a.row_negate(i);
        self.row_ops.push(Op::Negate(i));
    }

    fn choose_pivot(&self, active_rows: &BTreeSet<usize>) -> Option<(usize, usize)> {
        let mut best: Option<(T, usize, usize, usize)> = None;
        for &r in active_rows {
            let row = self.a.row_entries(r);
            let row_fill = row.len() - 1;
            for (&c, v) in row {
                let mag = v.magnitude();
                let cost = row_fill * (self.a.col_support(c).len() - 1);
                let better = match &best {
                    None => true,
                    Some((bm, bc, br, bcol)) => (&mag, cost, r, c) < (bm, *bc, *br, *bcol),
                };
                if better {
                    best = Some((mag, cost, r, c));
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    /// Clears row `r` and column `c` except for the pivot.
    fn eliminate(&mut self, r: usize, c: usize) {
        loop {
            let others: Vec<usize> = self.a.col_support(c).iter().copied().filter(|&i| i != r).collect();
            for i in others {
                let p = self.a.get(r, c);
                let x = self.a.get(i, c);
                if x.is_zero() {
                    continue;
                }
                if (x.clone() % p.clone()).is_zero() {
                    self.row_add(r, i, -(x / p));
                } else {
                    let (g, s, t) = extended_gcd(&p, &x);
                    let m = [s, t, -(x / g.clone()), p / g];
                    self.row_combine(r, i, m);
                }
            }
            let others: Vec<usize> = self.a.row_entries(r).keys().copied().filter(|&j| j != c).collect();
            for j in others {
                let p = self.a.get(r, c);
                let x = self.a.get(r, j);
                if x.is_zero() {
                    continue;
                }
                if (x.clone() % p.clone()).is_zero() {
                    self.col_add(c, j, -(x / p));
                } else {
                    let (g, s, t) = extended_gcd(&p, &x);
                    let m = [s, t, -(x / g.clone()), p / g];
                    self.col_combine(c, j, m);
                }
            }
            if self.a.col_support(c).len() == 1 && self.a.row_entries(r).len() == 1 {
                break;
            }
        }
        if self.a.get(r, c).is_negative() {
            self.row_negate(r);
        }
    }

    /// Turns `diag(a, b)` at pivots `(ri, ci)`, `(rj, cj)` into `diag(gcd, lcm)`.
    fn gcd_lcm(&mut self, (ri, ci): (usize, usize), (rj, cj): (usize, usize)) {
        let a = self.a.get(ri, ci);
        let b = self.a.get(rj, cj);
        self.col_add(cj, ci, T::one());
        let (g, s, t) = extended_gcd(&a, &b);
        let m = [s, t.clone(), -(b.clone() / g.clone()), a / g.clone()];
        self.row_combine(ri, rj, m);
        self.col_add(ci, cj, -(t * b / g));
        debug_assert!(self.a.get(ri, cj).is_zero() && self.a.get(rj, ci).is_zero());
        if self.a.get(rj, cj).is_negative() {
            self.row_negate(rj);
        }
    }
}

pub fn smith_normal_form<T: IntScalar>(a: &SparseMatrix<T>) -> SmithForm<T> {
    let n_rows = a.n_rows();
    let n_cols = a.n_cols();
    let mut red = Reducer {
        a: a.clone(),
        row_ops: Vec::new(),
        col_ops: Vec::new(),
    };
    let mut active_rows: BTreeSet<usize> = (0..n_rows).filter(|&r| !red.a.row_entries(r).is_empty()).collect();
    let mut pivots = Vec::new();
    while let Some((r, c)) = red.choose_pivot(&active_rows) {
        red.eliminate(r, c);
        active_rows.remove(&r);
        // rows emptied by the elimination carry no further information
        active_rows.retain(|&i| !red.a.row_entries(i).is_empty());
        pivots.push((r, c));
    }

    pivots.sort_by(|x, y| red.a.get(x.0, x.1).cmp(&red.a.get(y.0, y.1)).then(x.cmp(y)));
    let first_nonunit = pivots.iter().position(|&(r, c)| !red.a.get(r, c).is_one()).unwrap_or(pivots.len());
    for i in first_nonunit..pivots.len() {
        for j in i + 1..pivots.len() {
            let di = red.a.get(pivots[i].0, pivots[i].1);
            let dj = red.a.get(pivots[j].0, pivots[j].1);
            if !(dj % di).is_zero() {
                red.gcd_lcm(pivots[i], pivots[j]);
            }
        }
    }

    let diagonal: Vec<T> = pivots.iter().map(|&(r, c)| red.a.get(r, c)).collect();
    debug_assert!(diagonal.windows(2).all(|w| (w[1].clone() % w[0].clone()).is_zero()));

    let pivot_rows: BTreeSet<usize> = pivots.iter().map(|p| p.0).collect();
    let pivot_cols: BTreeSet<usize> = pivots.iter().map(|p| p.1).collect();
    let row_perm = pivots
        .iter()
        .map(|p| p.0)
        .chain((0..n_rows).filter(|r| !pivot_rows.contains(r)))
        .collect();
    let col_perm = pivots
        .iter()
        .map(|p| p.1)
        .chain((0..n_cols).filter(|c| !pivot_cols.contains(c)))
        .collect();

    SmithForm {
        n_rows,
        n_cols,
        diagonal,
        row_ops: red.row_ops,
        col_ops: red.col_ops,
        row_perm,
        col_perm,
    }
}

pub fn smith_normal_form_dense<T: IntScalar>(a: &Matrix<T>) -> SmithForm<T> {
    smith_normal_form(&SparseMatrix::from_dense(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn check<T: IntScalar>(a: &Matrix<T>) -> SmithForm<T> {
        let s = smith_normal_form_dense(a);
        let u = s.u();
        let v = s.v();
        assert_eq!(u.mul(a).mul(&v), s.d(), "U·A·V != D for {a:?}");
        assert!(u.determinant().is_unit());
        assert!(v.determinant().is_unit());
        s
    }

    #[test]
    fn small_examples() {
        let a = Matrix::from_rows(vec![vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = check(&a);
        assert_eq!(s.diagonal(), &[2, 6, 12]);

        let a = Matrix::from_rows(vec![vec![2i64, 0], vec![0, 3]]);
        let s = check(&a);
        assert_eq!(s.diagonal(), &[1, 6]);
        assert_eq!(s.invariant_factors(), vec![6]);

        let a = Matrix::from_rows(vec![vec![0i64, 0, 0], vec![0, 0, 0]]);
        let s = check(&a);
        assert_eq!(s.rank(), 0);
        assert_eq!(s.free_rank(), 3);
    }

    #[test]
    fn bigint_and_i64_agree() {
        let rows = vec![vec![3i64, 7, 1, 0], vec![9, -2, 4, 4], vec![0, 5, 5, 10]];
        let a = Matrix::from_rows(rows.clone());
        let b = Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect());
        let sa = check(&a);
        let sb = check(&b);
        let da: Vec<BigInt> = sa.diagonal().iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(da, sb.diagonal());
    }

    #[test]
    fn apply_v_matches_dense_product() {
        let a = Matrix::from_rows(vec![vec![4i64, 6, 2], vec![2, 2, 8]]);
        let s = check(&a);
        let v = s.v();
        let x = vec![3i64, -1, 5];
        let dense = Matrix::from_rows(vec![x.clone()]).mul(&v);
        assert_eq!(s.apply_v(&x), dense.row(0).to_vec());
    }
}
