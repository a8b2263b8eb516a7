//! Dense matrices over a [`Field`].
//!
//! Elimination pivots on the value part of each entry, so the same routines
//! work for jets: at a point of constant rank the pivot pattern is locally
//! constant and the jet of the result is the derivative of the result.

use std::ops::{Index, IndexMut};

use crate::scalar::Field;

/// Relative threshold below which a float pivot is treated as zero.
pub const FLOAT_PIVOT_TOL: f64 = 1e-10;

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: std::fmt::Debug> std::fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F> Matrix<F> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &F> {
        self.data.iter()
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = out[(i, j)].clone() + &(a.clone() * b);
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + &(a.clone() * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (o.rows, o.cols),
            "matrix difference shape"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|a| a.clone() * c)
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Entrywise complex conjugate (not the conjugate transpose).
    pub fn conj(&self) -> Self {
        self.map(F::conj)
    }

    pub fn trace(&self) -> F {
        assert!(self.is_square());
        (0..self.rows).fold(F::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(F::magnitude).fold(0.0, f64::max)
    }

    /// Index of the pivot row for column `col` among rows `from..`.
    fn find_pivot(&self, col: usize, from: usize, tol: f64) -> Option<usize> {
        if F::EXACT {
            (from..self.rows).find(|&r| !self[(r, col)].value_is_zero())
        } else {
            let (best, mag) = (from..self.rows)
                .map(|r| (r, self[(r, col)].magnitude()))
                .fold(
                    (None, 0.0),
                    |(b, m), (r, x)| if x > m { (Some(r), x) } else { (b, m) },
                );
            if mag > tol {
                best
            } else {
                None
            }
        }
    }

    fn pivot_tol(&self) -> f64 {
        FLOAT_PIVOT_TOL * self.max_magnitude().max(f64::MIN_POSITIVE)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref_in_place(&mut self, tol: f64) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = self.find_pivot(col, row, tol) else {
                if !F::EXACT {
                    for r in row..self.rows {
                        self[(r, col)] = F::zero();
                    }
                }
                continue;
            };
            self.swap_rows(row, p);
            let inv = F::one() / self[(row, col)].clone();
            for j in col..self.cols {
                let v = self[(row, j)].clone() * &inv;
                self[(row, j)] = v;
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self[(r, col)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = self[(r, j)].clone() - &(factor.clone() * &self[(row, j)]);
                    self[(r, j)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let tol = self.pivot_tol();
        self.clone().rref_in_place(tol).len()
    }

    /// Columns form a basis of the right kernel.
    pub fn null_space(&self) -> Matrix<F> {
        let tol = self.pivot_tol();
        let mut r = self.clone();
        let pivots = r.rref_in_place(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis[(fc, k)] = F::one();
            for (pr, &pc) in pivots.iter().enumerate() {
                basis[(pc, k)] = -r[(pr, fc)].clone();
            }
        }
        basis
    }

    /// Solves `self · X = rhs`; `None` if `self` is singular.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert!(self.is_square(), "solve needs a square matrix");
        assert_eq!(self.rows, rhs.rows, "solve shape");
        let n = self.rows;
        let tol = self.pivot_tol();
        let mut aug = Self::from_fn(n, n + rhs.cols, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - n)].clone()
            }
        });
        let mut row = 0;
        for col in 0..n {
            let p = aug.find_pivot(col, row, tol)?;
            aug.swap_rows(row, p);
            let inv = F::one() / aug[(row, col)].clone();
            for j in col..aug.cols {
                let v = aug[(row, j)].clone() * &inv;
                aug[(row, j)] = v;
            }
            for r in 0..n {
                if r == row {
                    continue;
                }
                let factor = aug[(r, col)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..aug.cols {
                    let v = aug[(r, j)].clone() - &(factor.clone() * &aug[(row, j)]);
                    aug[(r, j)] = v;
                }
            }
            row += 1;
        }
        Some(Self::from_fn(n, rhs.cols, |i, j| aug[(i, n + j)].clone()))
    }

    pub fn inverse(&self) -> Option<Self> {
        self.solve(&Self::identity(self.rows))
    }

    /// Largest entry magnitude of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_magnitude()
    }
}
