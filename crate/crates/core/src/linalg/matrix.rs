use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{cre, Real, C};

/// Rows below this size are multiplied serially.
const PAR_THRESHOLD: usize = 64;

/// Dense complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix<R: Real> {
    rows: usize,
    cols: usize,
    data: Vec<C<R>>,
}

impl<R: Real> ComplexMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<R>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major entries; fails on a length mismatch or non-finite entry.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C<R>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        let m = Self { rows, cols, data };
        if !m.is_finite() {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<C<R>>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(r, c, data)
    }

    /// Stacks equal-length vectors as columns.
    pub fn from_columns(rows: usize, columns: &[Vec<C<R>>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: col.len() });
            }
            m.set_column(j, col);
        }
        Ok(m)
    }

    pub fn diagonal(entries: &[C<R>]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C<R>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C<R>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C<R>> {
        (0..self.rows).map(|i| self.data[i * self.cols + j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<C<R>>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[C<R>]) {
        for (i, &v) in col.iter().enumerate() {
            self.data[i * self.cols + j] = v;
        }
    }

    /// Columns `start..end` as a new matrix.
    pub fn column_range(&self, start: usize, end: usize) -> Self {
        Self::from_fn(self.rows, end - start, |i, j| self[(i, start + j)])
    }

    /// Concatenates column blocks with equal row counts.
    pub fn hstack(blocks: &[&Self]) -> Result<Self> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            if b.rows != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: b.rows });
            }
            for i in 0..rows {
                m.data[i * cols + offset..i * cols + offset + b.cols].copy_from_slice(b.row(i));
            }
            offset += b.cols;
        }
        Ok(m)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: C<R>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn scale_real(&self, s: R) -> Self {
        self.scale(cre(s))
    }

    pub fn trace(&self) -> C<R> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus; the `‖·‖∞` used for every tolerance check.
    pub fn max_abs(&self) -> R {
        self.data.iter().map(|z| z.norm()).fold(R::zero(), R::max)
    }

    pub fn frobenius_norm(&self) -> R {
        self.data.iter().map(|z| z.norm_sqr()).sum::<R>().sqrt()
    }

    /// `max |self - other|` entrywise; infinite when shapes differ.
    pub fn max_diff(&self, other: &Self) -> R {
        if self.rows != other.rows || self.cols != other.cols {
            return R::infinity();
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (*a - *b).norm()).fold(R::zero(), R::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: R) -> bool {
        self.max_diff(other) <= tol
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let (n, k, m) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![C::zero(); n * m];
        let kernel = |(i, out_row): (usize, &mut [C<R>])| {
            let a_row = &self.data[i * k..(i + 1) * k];
            for (p, &a) in a_row.iter().enumerate() {
                if a.re == R::zero() && a.im == R::zero() {
                    continue;
                }
                let b_row = &rhs.data[p * m..(p + 1) * m];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o = *o + a * b;
                }
            }
        };
        if n * k * m >= PAR_THRESHOLD * PAR_THRESHOLD * PAR_THRESHOLD && m > 0 {
            out.par_chunks_mut(m).enumerate().for_each(kernel);
        } else if m > 0 {
            out.chunks_mut(m).enumerate().for_each(kernel);
        }
        Ok(Self { rows: n, cols: m, data: out })
    }

    /// `self† · rhs` without materializing the adjoint.
    pub fn adjoint_mul(&self, rhs: &Self) -> Result<Self> {
        self.adjoint().matmul(rhs)
    }

    pub fn mul_vec(&self, v: &[C<R>]) -> Result<Vec<C<R>>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum()).collect())
    }

    /// Kronecker product `self ⊗ rhs` (left factor most significant).
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        let mut m = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        m.data[(i * rhs.rows + k) * c + j * rhs.cols + l] = a * rhs[(k, l)];
                    }
                }
            }
        }
        m
    }

    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        Ok(&self.matmul(rhs)? - &rhs.matmul(self)?)
    }

    pub fn anticommutator(&self, rhs: &Self) -> Result<Self> {
        Ok(&self.matmul(rhs)? + &rhs.matmul(self)?)
    }

    pub fn self_adjoint_deviation(&self) -> R {
        self.max_diff(&self.adjoint())
    }

    /// `‖A†A − I‖∞` (columns orthonormal).
    pub fn isometry_deviation(&self) -> R {
        match self.adjoint_mul(self) {
            Ok(g) => g.max_diff(&Self::identity(self.cols)),
            Err(_) => R::infinity(),
        }
    }

    pub fn unitary_deviation(&self) -> R {
        if !self.is_square() {
            return R::infinity();
        }
        self.isometry_deviation()
    }

    pub fn normal_deviation(&self) -> R {
        let a = self.adjoint();
        match (a.matmul(self), self.matmul(&a)) {
            (Ok(x), Ok(y)) => x.max_diff(&y),
            _ => R::infinity(),
        }
    }

    pub fn is_self_adjoint(&self, tol: R) -> bool {
        self.is_square() && self.self_adjoint_deviation() <= tol
    }

    pub fn is_unitary(&self, tol: R) -> bool {
        self.unitary_deviation() <= tol
    }

    pub fn is_normal(&self, tol: R) -> bool {
        self.is_square() && self.normal_deviation() <= tol
    }

    /// Returns the matrix with its scalar type converted.
    pub fn cast<S: Real>(&self) -> ComplexMatrix<S> {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| C::new(S::lit(z.re.to_f64_lossy()), S::lit(z.im.to_f64_lossy()))).collect(),
        }
    }
}

impl<R: Real> Index<(usize, usize)> for ComplexMatrix<R> {
    type Output = C<R>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<R> {
        &self.data[i * self.cols + j]
    }
}

impl<R: Real> IndexMut<(usize, usize)> for ComplexMatrix<R> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<R> {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Real> Add for &ComplexMatrix<R> {
    type Output = ComplexMatrix<R>;
    fn add(self, rhs: Self) -> ComplexMatrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<R: Real> Sub for &ComplexMatrix<R> {
    type Output = ComplexMatrix<R>;
    fn sub(self, rhs: Self) -> ComplexMatrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<R: Real> Neg for &ComplexMatrix<R> {
    type Output = ComplexMatrix<R>;
    fn neg(self) -> ComplexMatrix<R> {
        self.scale_real(-R::one())
    }
}

impl<R: Real> Mul for &ComplexMatrix<R> {
    type Output = ComplexMatrix<R>;
    /// Panics on a shape mismatch; use [`ComplexMatrix::matmul`] for the fallible form.
    fn mul(self, rhs: Self) -> ComplexMatrix<R> {
        self.matmul(rhs).expect("shape mismatch in mul")
    }
}

/// Inner product `⟨u, v⟩`, antilinear in `u`.
pub fn inner<R: Real>(u: &[C<R>], v: &[C<R>]) -> C<R> {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm<R: Real>(v: &[C<R>]) -> R {
    v.iter().map(|z| z.norm_sqr()).sum::<R>().sqrt()
}

/// Normalizes `v` in place; returns the original norm.
pub fn normalize<R: Real>(v: &mut [C<R>]) -> R {
    let n = norm(v);
    if n > R::zero() {
        let inv = R::one() / n;
        for z in v.iter_mut() {
            *z = *z * inv;
        }
    }
    n
}

pub fn basis_vector<R: Real>(dim: usize, index: usize) -> Vec<C<R>> {
    let mut v = vec![C::zero(); dim];
    v[index] = C::one();
    v
}
