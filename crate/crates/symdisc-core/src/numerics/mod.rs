//! Dense complex linear algebra kernels consumed by every other module.
//!
//! Matrices are small (at most a few hundred rows), so everything here
//! favours accuracy and determinism over asymptotic speed: Hermitian
//! eigenproblems use cyclic Jacobi sweeps, singular values use one-sided
//! Jacobi, and general eigenvalues go through an explicit complex Schur
//! form.

mod eig;
mod radius;
mod roots;
mod schur;
mod svd;

pub use eig::{hermitian_eig, psd_sqrt};
pub use radius::{numerical_radius, DEFAULT_RADIUS_ANGLES};
pub use roots::companion_roots;
pub use schur::{eigenvalues, schur};
pub use svd::{operator_norm, singular_values, svd};

pub(crate) use eig::{clamped_sqrt, lambda_max, recompose};

use crate::{Error, Result, C64};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

/// Absolute/relative comparison slack used by the numeric kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs_eps: 1e-10, rel_eps: 1e-8 }
    }
}

impl Tolerance {
    /// Combined slack for a quantity with the given scale.
    pub fn for_scale(&self, scale: f64) -> f64 {
        self.abs_eps.max(self.rel_eps * scale)
    }
}

/// Dense complex matrix in row-major order.
///
/// Constructors reject empty shapes and non-finite entries; every operator
/// appearing in this crate (`Sᵢ`, `P`, `D_P`, `Fᵢ`, …) is carried by this
/// type.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty shape {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite matrix entry".into()));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty shape");
        ComplexMatrix { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// 1x1 matrix holding a scalar.
    pub fn scalar(z: C64) -> Self {
        ComplexMatrix { rows: 1, cols: 1, data: vec![z] }
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

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].conj())
    }

    pub fn scale(&self, z: C64) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= z;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v += *w;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v -= *w;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matvec");
        let mut out = vec![C64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius asymmetry `‖A − A*‖_F`; zero iff Hermitian.
    pub fn hermitian_defect(&self) -> f64 {
        assert!(self.is_square());
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `(A + A*)/2`, the Hermitian part.
    pub fn hermitize(&self) -> Self {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<C64>]) -> Result<Self> {
        if cols.is_empty() || cols[0].is_empty() {
            return Err(Error::Dimension("no columns".into()));
        }
        let rows = cols[0].len();
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("ragged columns".into()));
        }
        Ok(Self::from_fn(rows, cols.len(), |i, j| cols[j][i]))
    }

    /// `B A^{-1}` for square `A = self`, via the transposed system.
    pub fn right_divide_into(&self, numerator: &ComplexMatrix) -> Result<ComplexMatrix> {
        let x_t = self.transpose().solve(&numerator.transpose())?;
        Ok(x_t.transpose())
    }

    /// Solve `A x = b` for square `A` by LU with partial pivoting.
    pub fn solve(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        assert!(self.is_square(), "solve needs a square matrix");
        assert_eq!(self.rows, rhs.rows, "rhs row mismatch");
        let n = self.rows;
        let mut lu = self.clone();
        let mut x = rhs.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (mut pivot_row, mut pivot_val) = (k, lu[(k, k)].norm());
            for r in k + 1..n {
                let v = lu[(r, k)].norm();
                if v > pivot_val {
                    pivot_row = r;
                    pivot_val = v;
                }
            }
            if pivot_val == 0.0 {
                return Err(Error::Dimension("singular matrix in solve".into()));
            }
            if pivot_row != k {
                for j in 0..n {
                    let (a, b) = (lu[(k, j)], lu[(pivot_row, j)]);
                    lu[(k, j)] = b;
                    lu[(pivot_row, j)] = a;
                }
                for j in 0..x.cols {
                    let (a, b) = (x[(k, j)], x[(pivot_row, j)]);
                    x[(k, j)] = b;
                    x[(pivot_row, j)] = a;
                }
                perm.swap(k, pivot_row);
            }
            let inv = C64::new(1.0, 0.0) / lu[(k, k)];
            for r in k + 1..n {
                let factor = lu[(r, k)] * inv;
                lu[(r, k)] = factor;
                for j in k + 1..n {
                    let sub = factor * lu[(k, j)];
                    lu[(r, j)] -= sub;
                }
                for j in 0..x.cols {
                    let sub = factor * x[(k, j)];
                    x[(r, j)] -= sub;
                }
            }
        }
        // Back substitution.
        for j in 0..x.cols {
            for i in (0..n).rev() {
                let mut acc = x[(i, j)];
                for k in i + 1..n {
                    acc -= lu[(i, k)] * x[(k, j)];
                }
                x[(i, j)] = acc / lu[(i, i)];
            }
        }
        Ok(x)
    }
}

impl core::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}
