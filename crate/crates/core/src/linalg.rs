//! Dense matrices over a [`Scalar`] field with Gaussian elimination.
//!
//! Exact rationals use any nonzero pivot; floating mode uses partial pivoting
//! with a magnitude threshold.

use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;

use crate::scalar::{Scalar, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { rows: rows.len(), cols, data: rows.concat() }
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

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() * b.clone()).collect(),
        }
    }

    /// Sum of all entries.
    pub fn entry_sum(&self) -> S {
        self.data.iter().fold(S::zero(), |acc, x| acc + x.clone())
    }

    pub fn entries(&self) -> impl Iterator<Item = &S> {
        self.data.iter()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.is_negligible(tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn to_c64(&self) -> Matrix<C64> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::to_c64).collect() }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self, tol: f64) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = self.pick_pivot(r, c, tol) else { continue };
            self.swap_rows(r, p);
            let inv = S::one() / self[(r, c)].clone();
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self[(r, j)].clone();
                    self[(i, j)] = self[(i, j)].clone() - f.clone() * v;
                }
                self[(i, c)] = S::zero();
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn pick_pivot(&self, from: usize, col: usize, tol: f64) -> Option<usize> {
        if S::EXACT {
            (from..self.rows).find(|&i| !self[(i, col)].is_zero())
        } else {
            let (best, mag) = (from..self.rows)
                .map(|i| (i, self[(i, col)].magnitude()))
                .fold((from, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            (mag > tol).then_some(best)
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self, tol: f64) -> usize {
        let mut m = self.clone();
        m.rref(tol).len()
    }

    /// Basis of the right null space. Each basis vector has a 1 at one free
    /// column and 0 at every other free column; the free columns are returned
    /// alongside.
    pub fn null_space(&self, tol: f64) -> (Vec<Vec<S>>, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, f)].clone();
                }
                v
            })
            .collect();
        (basis, free)
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self, tol: f64) -> Option<Self> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let pivots = aug.rref(tol);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    pub fn determinant(&self, tol: f64) -> S {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = S::one();
        for c in 0..n {
            let Some(p) = m.pick_pivot(c, c, tol) else { return S::zero() };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            for i in c + 1..n {
                let f = m[(i, c)].clone() / piv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m[(c, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * v;
                }
            }
        }
        det
    }

    /// Eigenvalues (with multiplicity) through a complex Schur decomposition.
    pub fn eigenvalues(&self) -> Option<Vec<C64>> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Some(Vec::new());
        }
        let c = self.to_c64();
        let m = DMatrix::from_fn(n, n, |i, j| c[(i, j)]);
        let schur = nalgebra::Schur::try_new(m, 1e-14, 10_000)?;
        schur.eigenvalues().map(|v| v.iter().copied().collect())
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rational, Rational};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(&rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn exact_inverse_of_rank_three_eigenmatrix() {
        let p = q(&[&[1, 2, 25], &[1, 2, -3], &[1, -1, 0]]);
        let inv = p.inverse(0.0).unwrap();
        assert_eq!(p.mul(&inv), Matrix::identity(3));
        // first row of 28 * P^-1 is the zeta column
        let qm = inv.scale(&int(28));
        assert_eq!(qm[(0, 0)], int(1));
        assert_eq!(qm[(0, 1)], rational(25, 3));
        assert_eq!(qm[(0, 2)], rational(56, 3));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = q(&[&[1, 2], &[2, 4]]);
        assert!(m.inverse(0.0).is_none());
        assert_eq!(m.rank(0.0), 1);
        assert_eq!(m.determinant(0.0), int(0));
    }

    #[test]
    fn null_space_vectors_are_annihilated() {
        let m = q(&[&[1, 1, 0, -1], &[0, 1, 1, 0]]);
        let (basis, free) = m.null_space(0.0);
        assert_eq!(free, vec![2, 3]);
        for v in basis {
            let col = Matrix::from_fn(4, 1, |i, _| v[i].clone());
            assert!(m.mul(&col).is_negligible(0.0));
        }
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = q(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(m.determinant(0.0), int(4));
        assert_eq!(m.to_c64().determinant(1e-12).re.round(), 4.0);
    }

    #[test]
    fn eigenvalues_of_rotation_are_complex() {
        let m = q(&[&[0, -1], &[1, 0]]);
        let mut ev = m.eigenvalues().unwrap();
        ev.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((ev[0] - C64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((ev[1] - C64::new(0.0, 1.0)).norm() < 1e-12);
    }
}
