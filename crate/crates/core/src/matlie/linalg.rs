//! Gaussian elimination over exact fields.

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::exact::Field;

/// Reduced row echelon form and the pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let ctx = m.ctx().clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<F>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = F::inv(&ctx, &a[r][c]).expect("nonzero pivot is invertible");
        for x in a[r].iter_mut() {
            *x = F::mul(&ctx, x, &inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = F::sub(&ctx, x, &F::mul(&ctx, &f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (Matrix::from_rows(&ctx, a), pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    rref(m).1.len()
}

/// Basis of the right null space `{v : m v = 0}`, as column vectors.
pub fn null_space<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let ctx = m.ctx().clone();
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![F::zero(&ctx); m.cols()];
            v[fc] = F::one(&ctx);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = F::neg(&ctx, r.get(row, fc));
            }
            v
        })
        .collect()
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
    }
    let n = m.rows();
    let ctx = m.ctx().clone();
    let aug = Matrix::from_fn(&ctx, n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            F::one(&ctx)
        } else {
            F::zero(&ctx)
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok(Matrix::from_fn(&ctx, n, n, |i, j| r.get(i, n + j).clone()))
}

/// Matrix whose columns are the given vectors.
pub fn from_columns<F: Field>(ctx: &F::Ctx, n: usize, cols: &[Vec<F>]) -> Matrix<F> {
    Matrix::from_fn(ctx, n, cols.len(), |i, j| cols[j][i].clone())
}
