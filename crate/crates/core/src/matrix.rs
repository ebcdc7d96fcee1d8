//! Dense exact linear algebra over a `Scalar` field: row reduction,
//! determinants, inverses, kernels, and linear solves. Everything is plain
//! Gaussian elimination; exactness, not speed, is the point.

use crate::scalar::{Rat, Scalar};
use std::fmt;
use std::ops::{Add, Mul, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Gaussian elimination in place on a copy; returns (rref, pivot columns).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = S::one() / m.get(r, c).clone();
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let mut det = S::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return S::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = det * pivot.clone();
            let inv = S::one() / pivot;
            for i in c + 1..m.rows {
                if !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone() * inv.clone();
                    for j in c..m.cols {
                        let v = m.get(i, j).clone() - f.clone() * m.get(c, j).clone();
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let (r, pivots) = aug.rref();
        aug = r;
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| aug.get(i, j + n).clone()))
    }

    /// One solution of `self * x = b` with free variables set to zero, or
    /// None if the system is inconsistent.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let aug = Mat::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![S::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the right kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![S::zero(); self.cols];
                v[fc] = S::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, fc).clone();
                }
                v
            })
            .collect()
    }
}

impl<S: Scalar> Mul for &Mat<S> {
    type Output = Mat<S>;
    fn mul(self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        Mat::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                if !self.get(i, k).is_zero() {
                    acc = acc + self.get(i, k).clone() * rhs.get(k, j).clone();
                }
            }
            acc
        })
    }
}

impl<S: Scalar> Add for &Mat<S> {
    type Output = Mat<S>;
    fn add(self, rhs: &Mat<S>) -> Mat<S> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Mat::from_fn(self.rows, self.cols, |i, j| self.get(i, j).clone() + rhs.get(i, j).clone())
    }
}

impl<S: Scalar> Sub for &Mat<S> {
    type Output = Mat<S>;
    fn sub(self, rhs: &Mat<S>) -> Mat<S> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Mat::from_fn(self.rows, self.cols, |i, j| self.get(i, j).clone() - rhs.get(i, j).clone())
    }
}

impl<S: Scalar> fmt::Display for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rational matrix literal from i64 entries.
pub fn mat_i64(rows: &[&[i64]]) -> Mat<Rat> {
    Mat::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| crate::scalar::int(v)).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use num_traits::Zero;

    #[test]
    fn inverse_and_det() {
        let m = mat_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det(), int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
        let singular = mat_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.det(), int(0));
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn solve_and_kernel() {
        let m = mat_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let b = vec![int(6), int(12)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|e| e.is_zero()));
        }
        assert!(m.solve(&[int(1), int(0)]).is_none());
    }

    #[test]
    fn rref_ranks() {
        let m = mat_i64(&[&[0, 1], &[0, 2], &[1, 0]]);
        assert_eq!(m.rank(), 2);
        let half = Mat::from_rows(vec![vec![rat(1, 2)]]);
        assert_eq!(half.rank(), 1);
        assert_eq!(half.inverse().unwrap().get(0, 0), &int(2));
    }
}
