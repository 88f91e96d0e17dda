use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::{ExactPoly, Fp, Rational, Scalar};

/// A dense row-major matrix over a [`Scalar`] ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<S: Scalar> {
    rows: usize,
    cols: usize,
    ctx: S::Ctx,
    data: Vec<S>,
}

/// Matrix over the prime field carried in its context.
pub type FpMatrix = Matrix<Fp>;
/// Matrix over the rationals.
pub type QMatrix = Matrix<Rational>;
/// Matrix with multivariate polynomial entries.
pub type PolyMatrix = Matrix<ExactPoly>;

impl<S: Scalar> Matrix<S> {
    pub fn zeros(ctx: &S::Ctx, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, ctx: ctx.clone(), data: vec![S::zero(ctx); rows * cols] }
    }

    pub fn identity(ctx: &S::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one(ctx);
        }
        m
    }

    /// The matrix unit `E_ij` (0-based).
    pub fn unit(ctx: &S::Ctx, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        m.set(i, j, S::one(ctx));
        m
    }

    pub fn from_fn(ctx: &S::Ctx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, ctx: ctx.clone(), data }
    }

    pub fn from_rows(ctx: &S::Ctx, rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, ctx: ctx.clone(), data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(ctx: &S::Ctx, rows: &[&[i64]]) -> Self {
        Self::from_rows(
            ctx,
            rows.iter().map(|r| r.iter().map(|&v| S::from_int(ctx, v)).collect()).collect(),
        )
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(&self.ctx, self.rows)
    }

    pub fn is_strictly_upper(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i + 1)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn map<T: Scalar>(&self, ctx: &T::Ctx, f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, ctx: ctx.clone(), data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<T: Scalar>(&self, ctx: &T::Ctx, f: impl FnMut(&S) -> Option<T>) -> Option<Matrix<T>> {
        let data: Option<Vec<T>> = self.data.iter().map(f).collect();
        Some(Matrix { rows: self.rows, cols: self.cols, ctx: ctx.clone(), data: data? })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        let ctx = &self.ctx;
        self.map(ctx, |a| S::mul(ctx, a, c))
    }

    fn check_same_shape(&self, other: &Self) {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = &self.ctx;
        let mut out = Self::zeros(ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = S::add(ctx, &out.data[idx], &S::mul(ctx, a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Self::identity(&self.ctx, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self * other == other * self
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Self::from_fn(&self.ctx, r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.get(i - self.rows, j - self.cols).clone()
            } else {
                S::zero(&self.ctx)
            }
        })
    }
}

impl FpMatrix {
    pub fn prime(&self) -> u32 {
        *self.ctx()
    }
}

impl<'a, S: Scalar> Add for &'a Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &'a Matrix<S>) -> Matrix<S> {
        self.check_same_shape(rhs);
        let ctx = &self.ctx;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            ctx: ctx.clone(),
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| S::add(ctx, a, b)).collect(),
        }
    }
}

impl<'a, S: Scalar> Sub for &'a Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &'a Matrix<S>) -> Matrix<S> {
        self.check_same_shape(rhs);
        let ctx = &self.ctx;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            ctx: ctx.clone(),
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| S::sub(ctx, a, b)).collect(),
        }
    }
}

impl<'a, S: Scalar> Mul for &'a Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &'a Matrix<S>) -> Matrix<S> {
        self.try_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        let ctx = &self.ctx;
        self.map(ctx, |a| S::neg(ctx, a))
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_units() {
        let p = 5u32;
        let e12 = FpMatrix::unit(&p, 3, 0, 1);
        let e23 = FpMatrix::unit(&p, 3, 1, 2);
        assert_eq!(&e12 * &e23, FpMatrix::unit(&p, 3, 0, 2));
        assert!((&e23 * &e12).is_zero());
        assert_eq!(e12.commutator(&e23), FpMatrix::unit(&p, 3, 0, 2));
    }

    #[test]
    fn power_by_squaring() {
        let j = QMatrix::from_ints(&(), &[&[1, 1], &[0, 1]]);
        assert_eq!(j.pow(10), QMatrix::from_ints(&(), &[&[1, 10], &[0, 1]]));
        assert!(j.pow(0).is_identity());
    }

    #[test]
    fn mismatched_product_is_an_error() {
        let a = QMatrix::zeros(&(), 2, 3);
        assert!(matches!(a.try_mul(&a), Err(Error::DimensionMismatch(_))));
    }
}
