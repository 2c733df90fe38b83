//! Naive elementary-operation reduction of an integer matrix.
//!
//! This is the independent check for [`crate::smith`]: dense storage, no transform
//! tracking, no Bezout steps. It repeatedly moves the entry of least magnitude to the
//! corner and subtracts quotients until the corner's row and column are clean, then
//! normalizes the diagonal into a divisibility chain by gcd/lcm exchange.

use crate::matrix::Matrix;
use crate::scalar::IntScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveReduction<T> {
    /// Nonzero diagonal entries in divisibility order.
    pub diagonal: Vec<T>,
    pub rank: usize,
    pub cols: usize,
}

impl<T: IntScalar> NaiveReduction<T> {
    pub fn invariant_factors(&self) -> Vec<T> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn free_rank(&self) -> usize {
        self.cols - self.rank
    }
}

pub fn naive_reduction<T: IntScalar>(m: &Matrix<T>) -> NaiveReduction<T> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<T>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut t = 0;
    while t < rows.min(cols) {
        // least nonzero magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => a[i][j].abs() < a[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].clone() / a[t][t].clone();
            for j in t..cols {
                let v = a[i][j].clone() - q.clone() * a[t][j].clone();
                a[i][j] = v;
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].clone() / a[t][t].clone();
            for row in a.iter_mut().skip(t) {
                let v = row[j].clone() - q.clone() * row[t].clone();
                row[j] = v;
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if clean {
            t += 1;
        }
    }

    let mut diagonal: Vec<T> = (0..rows.min(cols))
        .map(|k| a[k][k].abs())
        .filter(|v| !v.is_zero())
        .collect();
    let rank = diagonal.len();
    for i in 0..diagonal.len() {
        for j in i + 1..diagonal.len() {
            let g = diagonal[i].gcd(&diagonal[j]);
            let l = diagonal[i].lcm(&diagonal[j]);
            diagonal[i] = g;
            diagonal[j] = l;
        }
    }
    NaiveReduction { diagonal, rank, cols }
}
