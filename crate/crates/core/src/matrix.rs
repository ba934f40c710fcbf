//! Dense matrices over a [`Ring`], with exact elimination over a [`Scalar`]
//! field.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for r in 0..self.rows {
            list.entry(&&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        list.finish()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
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

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self
    where
        T: Clone,
    {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self
    where
        T: Clone,
    {
        Matrix::from_fn(r1 - r0, c1 - c0, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    /// Delete one row and one column.
    pub fn minor(&self, skip_r: usize, skip_c: usize) -> Self
    where
        T: Clone,
    {
        Matrix::from_fn(self.rows - 1, self.cols - 1, |r, c| {
            let rr = if r >= skip_r { r + 1 } else { r };
            let cc = if c >= skip_c { c + 1 } else { c };
            self[(rr, cc)].clone()
        })
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn scalar(n: usize, value: T) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { value.clone() } else { T::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    /// `[[a, b], [c, d]]` from four equally sized blocks.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::DimensionMismatch("block shapes disagree".into()));
        }
        let (top, left) = (a.rows, a.cols);
        Ok(Matrix::from_fn(a.rows + c.rows, a.cols + b.cols, |r, col| {
            match (r < top, col < left) {
                (true, true) => a[(r, col)].clone(),
                (true, false) => b[(r, col - left)].clone(),
                (false, true) => c[(r - top, col)].clone(),
                (false, false) => d[(r - top, col - left)].clone(),
            }
        }))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = &self[(r, k)];
                let b = &rhs[(k, c)];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + &(a.clone() * b);
                }
            }
            acc
        }))
    }

    /// Panics on incompatible shapes; see [`Matrix::checked_mul`].
    pub fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() + &rhs[(r, c)]))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() - &rhs[(r, c)]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.clone() * k)
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    fn same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    /// Determinant by cofactor expansion along the first row. Division-free,
    /// so it works over any ring; cost grows factorially with the size.
    pub fn cofactor_det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        Ok(cofactor_det(self))
    }

    /// `adj(M)` with `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("adjugate of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 1 {
            return Ok(Matrix::identity(1));
        }
        let mut adj = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let minor = cofactor_det(&self.minor(r, c));
                // adj is the transposed cofactor matrix
                adj[(c, r)] = if (r + c) % 2 == 0 { minor } else { -minor };
            }
        }
        Ok(adj)
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kronecker(&self, rhs: &Self) -> Self {
        Matrix::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |r, c| {
            self[(r / rhs.rows, c / rhs.cols)].clone() * &rhs[(r % rhs.rows, c % rhs.cols)]
        })
    }
}

fn cofactor_det<T: Ring>(m: &Matrix<T>) -> T {
    match m.rows {
        0 => T::one(),
        1 => m[(0, 0)].clone(),
        2 => m[(0, 0)].clone() * &m[(1, 1)] - m[(0, 1)].clone() * &m[(1, 0)],
        n => {
            let mut acc = T::zero();
            for c in 0..n {
                if m[(0, c)].is_zero() {
                    continue;
                }
                let term = m[(0, c)].clone() * &cofactor_det(&m.minor(0, c));
                acc = if c % 2 == 0 { acc + &term } else { acc - &term };
            }
            acc
        }
    }
}

/// Solution set `particular + span(kernel)` of a linear system.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSolution<F> {
    pub particular: Vec<F>,
    pub kernel: Vec<Vec<F>>,
}

impl<F: Scalar> Matrix<F> {
    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(F::one());
        }
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = F::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return Ok(F::zero());
                };
                a.swap_rows(k, swap);
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(i, j)].clone() * &a[(k, k)] - a[(i, k)].clone() * &a[(k, j)];
                    a[(i, j)] = num.div(&prev).expect("Bareiss pivot is nonzero");
                }
                a[(i, k)] = F::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        Ok(if sign_flip { -d } else { d })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Row echelon form by fraction-free elimination; returns the pivot
    /// columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let pivot = self[(row, col)].clone();
            for r in row + 1..self.rows {
                if self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for c in col..self.cols {
                    self[(r, c)] = self[(r, c)].clone() * &pivot - factor.clone() * &self[(row, c)];
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let solution = self.solve(&Matrix::identity(n))?;
        Ok(solution)
    }

    /// Solve `self · X = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        if !self.is_square() || rhs.rows != self.rows {
            return Err(Error::DimensionMismatch("solve needs a square system".into()));
        }
        let n = self.rows;
        let aug = Matrix::block(self, rhs, &Matrix::zeros(0, n), &Matrix::zeros(0, rhs.cols))?;
        let reduced = aug.rref();
        for i in 0..n {
            if reduced[(i, i)].is_zero() {
                return Err(Error::Singular);
            }
        }
        Ok(reduced.submatrix(0, n, n, n + rhs.cols))
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Self {
        let mut m = self.clone();
        let pivots = m.echelon();
        for (row, &col) in pivots.iter().enumerate().rev() {
            let inv = m[(row, col)].inv().expect("pivot is nonzero");
            for c in 0..m.cols {
                m[(row, c)] = m[(row, c)].clone() * &inv;
            }
            for r in 0..row {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in 0..m.cols {
                    m[(r, c)] = m[(r, c)].clone() - factor.clone() * &m[(row, c)];
                }
            }
        }
        m
    }

    /// All solutions of `self · x = b`.
    pub fn solve_affine(&self, b: &[F]) -> Result<AffineSolution<F>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let n = self.cols;
        let rhs = Matrix::from_fn(self.rows, 1, |r, _| b[r].clone());
        let aug = Matrix::block(self, &rhs, &Matrix::zeros(0, n), &Matrix::zeros(0, 1))?;
        let reduced = aug.rref();
        let mut pivots = Vec::new();
        for r in 0..reduced.rows {
            match (0..=n).find(|&c| !reduced[(r, c)].is_zero()) {
                Some(c) if c == n => return Err(Error::Inconsistent),
                Some(c) => pivots.push((r, c)),
                None => break,
            }
        }
        let mut particular = alloc::vec![F::zero(); n];
        for &(r, c) in &pivots {
            particular[c] = reduced[(r, n)].clone();
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut kernel = Vec::new();
        for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
            let mut v = alloc::vec![F::zero(); n];
            v[free] = F::one();
            for &(r, c) in &pivots {
                v[c] = -reduced[(r, free)].clone();
            }
            kernel.push(v);
        }
        Ok(AffineSolution { particular, kernel })
    }
}
