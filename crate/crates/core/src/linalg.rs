//! Small dense row-major matrices and the Cholesky-based helpers the
//! discriminant models need. Dimensions in this crate stay below a few dozen,
//! so nothing here is blocked or vectorised.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
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

    /// Builds a matrix from row-major storage.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows<R: AsRef<[T]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl ExactSizeIterator<Item = &[T]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn push_row(&mut self, row: &[T]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: row.len(),
            });
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mat_vec(&self, v: &[T]) -> Vec<T> {
        debug_assert_eq!(v.len(), self.cols);
        self.iter_rows().map(|r| dot(r, v)).collect()
    }

    /// Column means; empty matrices give a zero vector.
    pub fn column_means(&self) -> Vec<T> {
        let mut mean = vec![T::zero(); self.cols];
        if self.rows == 0 {
            return mean;
        }
        for r in self.iter_rows() {
            for (m, &x) in mean.iter_mut().zip(r) {
                *m += x;
            }
        }
        let n = T::from_usize(self.rows).unwrap();
        mean.iter_mut().for_each(|m| *m /= n);
        mean
    }

    /// Sum of outer products of the rows centred at `mean`.
    pub fn scatter(&self, mean: &[T]) -> Self {
        let p = self.cols;
        let mut s = Self::zeros(p, p);
        let mut centred = vec![T::zero(); p];
        for r in self.iter_rows() {
            for (c, (&x, &m)) in centred.iter_mut().zip(r.iter().zip(mean)) {
                *c = x - m;
            }
            for i in 0..p {
                for j in i..p {
                    s[(i, j)] += centred[i] * centred[j];
                }
            }
        }
        for i in 0..p {
            for j in 0..i {
                s[(i, j)] = s[(j, i)];
            }
        }
        s
    }

    pub fn scale(&mut self, factor: T) {
        self.data.iter_mut().for_each(|x| *x *= factor);
    }

    pub fn add_diagonal(&mut self, lambda: T) {
        for i in 0..self.rows.min(self.cols) {
            self[(i, i)] += lambda;
        }
    }

    /// Largest absolute asymmetry `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in 0..i {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    fn symmetrize(&mut self) {
        let two = T::one() + T::one();
        for i in 0..self.rows {
            for j in 0..i {
                let avg = (self[(i, j)] + self[(j, i)]) / two;
                self[(i, j)] = avg;
                self[(j, i)] = avg;
            }
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

#[inline]
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
#[derive(Clone, Debug)]
pub struct Cholesky<T> {
    lower: Matrix<T>,
}

impl<T: Scalar> Cholesky<T> {
    /// Returns `None` if a pivot is not strictly positive and finite.
    pub fn new(a: &Matrix<T>) -> Option<Self> {
        let n = a.rows();
        if n != a.cols() {
            return None;
        }
        let mut l = Matrix::zeros(n, n);
        for j in 0..n {
            let mut d = a[(j, j)];
            for k in 0..j {
                d -= l[(j, k)] * l[(j, k)];
            }
            if d <= T::zero() || !d.is_finite() {
                return None;
            }
            let d = d.sqrt();
            l[(j, j)] = d;
            for i in j + 1..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / d;
            }
        }
        Some(Cholesky { lower: l })
    }

    pub fn lower(&self) -> &Matrix<T> {
        &self.lower
    }

    pub fn log_det(&self) -> T {
        let two = T::one() + T::one();
        (0..self.lower.rows()).fold(T::zero(), |acc, i| acc + two * self.lower[(i, i)].ln())
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.lower.rows();
        let l = &self.lower;
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                let t = l[(i, k)] * y[k];
                y[i] -= t;
            }
            y[i] /= l[(i, i)];
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let t = l[(k, i)] * y[k];
                y[i] -= t;
            }
            y[i] /= l[(i, i)];
        }
        y
    }

    /// Symmetric inverse of the factored matrix.
    pub fn inverse(&self) -> Matrix<T> {
        let n = self.lower.rows();
        let mut inv = Matrix::zeros(n, n);
        let mut e = vec![T::zero(); n];
        for j in 0..n {
            e.iter_mut().for_each(|x| *x = T::zero());
            e[j] = T::one();
            let col = self.solve(&e);
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        inv.symmetrize();
        inv
    }
}

/// Diagonal-loading schedule applied to a covariance estimate until its
/// Cholesky factorization succeeds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularizationLadder {
    /// First loading as a fraction of the mean diagonal entry.
    pub relative_start: f64,
    /// Multiplier between consecutive attempts.
    pub growth: f64,
    /// Number of attempts.
    pub steps: usize,
}

impl Default for RegularizationLadder {
    fn default() -> Self {
        RegularizationLadder {
            relative_start: 1e-6,
            growth: 10.0,
            steps: 6,
        }
    }
}

/// A covariance estimate after diagonal loading, with its factorization.
#[derive(Clone, Debug)]
pub struct Regularized<T> {
    pub covariance: Matrix<T>,
    pub factor: Cholesky<T>,
    pub lambda: T,
}

impl RegularizationLadder {
    /// Loads `cov` with `lambda * I`, starting at `relative_start * trace / p`
    /// and multiplying by `growth` on every failed factorization.
    ///
    /// A zero-trace covariance (all points coincide) uses a unit scale so the
    /// loading is never zero.
    pub fn apply<T: Scalar>(&self, cov: &Matrix<T>) -> Result<Regularized<T>> {
        let p = cov.rows();
        if p == 0 {
            return Err(Error::Empty("covariance of dimension 0"));
        }
        let mean_diag = cov.trace() / T::from_usize(p).unwrap();
        let scale = if mean_diag > T::zero() && mean_diag.is_finite() {
            mean_diag
        } else {
            T::one()
        };
        let mut lambda = scale * T::of(self.relative_start);
        for _ in 0..self.steps {
            let mut loaded = cov.clone();
            loaded.add_diagonal(lambda);
            if let Some(factor) = Cholesky::new(&loaded) {
                return Ok(Regularized {
                    covariance: loaded,
                    factor,
                    lambda,
                });
            }
            lambda *= T::of(self.growth);
        }
        Err(Error::Factorization {
            attempts: self.steps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spd() -> Matrix<f64> {
        Matrix::from_rows(3, &[[4.0, 2.0, 0.6], [2.0, 5.0, 1.0], [0.6, 1.0, 3.0]]).unwrap()
    }

    #[test]
    fn cholesky_reconstructs() {
        let a = spd();
        let ch = Cholesky::new(&a).unwrap();
        let l = ch.lower();
        let lt = l.transpose();
        for i in 0..3 {
            for j in 0..3 {
                let v: f64 = (0..3).map(|k| l[(i, k)] * lt[(k, j)]).sum();
                assert!((v - a[(i, j)]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = spd();
        let inv = Cholesky::new(&a).unwrap().inverse();
        for i in 0..3 {
            for j in 0..3 {
                let v: f64 = (0..3).map(|k| a[(i, k)] * inv[(k, j)]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-12);
            }
        }
        assert!(inv.asymmetry() == 0.0);
    }

    #[test]
    fn log_det_matches_product_of_eigen_free_route() {
        // det via cofactor expansion
        let a = spd();
        let det = a[(0, 0)] * (a[(1, 1)] * a[(2, 2)] - a[(1, 2)] * a[(2, 1)])
            - a[(0, 1)] * (a[(1, 0)] * a[(2, 2)] - a[(1, 2)] * a[(2, 0)])
            + a[(0, 2)] * (a[(1, 0)] * a[(2, 1)] - a[(1, 1)] * a[(2, 0)]);
        let ld = Cholesky::new(&a).unwrap().log_det();
        assert!((ld - det.ln()).abs() < 1e-12);
    }

    #[test]
    fn singular_matrix_rejected_then_regularized() {
        let a: Matrix<f64> = Matrix::from_rows(2, &[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        assert!(Cholesky::new(&a).is_none());
        let r = RegularizationLadder::default().apply(&a).unwrap();
        assert!((r.lambda - 1e-6).abs() < 1e-18);
    }

    #[test]
    fn zero_covariance_uses_unit_scale() {
        let a: Matrix<f64> = Matrix::zeros(1, 1);
        let r = RegularizationLadder::default().apply(&a).unwrap();
        assert_eq!(r.covariance[(0, 0)], 1e-6);
    }

    #[test]
    fn ladder_exhaustion_is_an_error() {
        let mut a: Matrix<f64> = Matrix::identity(2);
        a[(0, 0)] = -1e6;
        a[(1, 1)] = 1e6;
        let err = RegularizationLadder::default().apply(&a).unwrap_err();
        assert!(matches!(err, Error::Factorization { attempts: 6 }));
    }

    #[test]
    fn scatter_is_symmetric_sum_of_outer_products() {
        let m: Matrix<f64> = Matrix::from_rows(2, &[[0.0, 0.0], [2.0, 0.0], [1.0, 3.0]]).unwrap();
        let mean = m.column_means();
        assert_eq!(mean, vec![1.0, 1.0]);
        let s = m.scatter(&mean);
        assert_eq!(s[(0, 0)], 2.0);
        assert_eq!(s[(1, 1)], 6.0);
        assert_eq!(s[(0, 1)], 0.0);
    }
}
