//! Dense complex matrices and the spectral kernels built on them.
//!
//! Everything in the crate works on [`Matrix`], a row-major array of
//! [`C64`] entries. Only the operations the radius computations need are
//! provided: products, adjoints, block composition, a Hermitian Jacobi
//! eigensolver and the functional calculus that sits on top of it.

mod eigen;
pub(crate) mod random;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use num_complex::Complex64 as C64;

pub(crate) use eigen::jacobi as jacobi_exact;
pub use eigen::{abs_power, abs_value, hermitian_eig, hermitian_power, opnorm, EigenDecomposition};
pub use random::{random_matrix, random_unitary, Ensemble};

use crate::error::{Error, Result};

/// Tolerance on `max |H - H*|` below which a matrix is treated as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Matrix {
    /// Builds a matrix from row-major entries, rejecting a wrong entry count
    /// or any NaN/infinite entry.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(format!("empty {rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(k) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    ///
    /// ```
    /// use qradius::Matrix;
    /// let t = Matrix::from_real(2, 2, &[0.0, 1.0 / 35.0, 0.0, 0.0]).unwrap();
    /// assert_eq!(t.get(0, 1).re, 1.0 / 35.0);
    /// ```
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, C64::new(1.0, 0.0))
    }

    /// `z * I` of size `n`.
    pub fn scalar(n: usize, z: C64) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { z } else { C64::new(0.0, 0.0) })
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let n = diag.len();
        Self::from_fn(
            n,
            n,
            |i, j| if i == j { diag[i] } else { C64::new(0.0, 0.0) },
        )
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn square_dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: C64) {
        self.data[i * self.cols + j] = z;
    }

    /// Row-major entries.
    pub fn data(&self) -> &[C64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Matrix product, checking inner dimensions.
    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Entry-wise sum, checking shapes.
    pub fn try_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    fn same_shape(&self, rhs: &Matrix) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn scale(&self, z: C64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * z).collect(),
        }
    }

    pub fn scale_real(&self, x: f64) -> Matrix {
        self.scale(C64::new(x, 0.0))
    }

    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(x).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |H - H*|` over entries; infinite for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation() <= HERMITIAN_TOL
    }

    /// `(M + M*) / 2`.
    pub fn hermitian_part(&self) -> Matrix {
        let n = self.rows;
        Matrix::from_fn(n, n, |i, j| (self.get(i, j) + self.get(j, i).conj()) * 0.5)
    }

    /// `Re(e^{iθ} M) = (e^{iθ} M + e^{-iθ} M*) / 2`.
    pub fn rotated_real_part(&self, theta: f64) -> Matrix {
        let w = C64::from_polar(1.0, theta);
        let n = self.rows;
        Matrix::from_fn(n, n, |i, j| {
            (w * self.get(i, j) + (w * self.get(j, i)).conj()) * 0.5
        })
    }

    /// `M* M`, symmetrized so roundoff never breaks Hermiticity.
    pub fn gram(&self) -> Matrix {
        let n = self.cols;
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let s: C64 = (0..self.rows)
                    .map(|k| self.get(k, i).conj() * self.get(k, j))
                    .sum();
                out.set(i, j, s);
                out.set(j, i, s.conj());
            }
            let d = out.get(i, i).re;
            out.set(i, i, C64::new(d, 0.0));
        }
        out
    }

    /// `M M*`.
    pub fn cogram(&self) -> Matrix {
        self.adjoint().gram()
    }
}

/// Conjugate transpose; `adjoint(&adjoint(&t)) == t` exactly.
pub fn adjoint(t: &Matrix) -> Matrix {
    t.adjoint()
}

/// Assembles the operator matrix `[[A, B], [C, D]]`.
///
/// `A` is `n1 x n1`, `B` is `n1 x n2`, `C` is `n2 x n1` and `D` is `n2 x n2`.
pub fn block_compose(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<Matrix> {
    let n1 = a.square_dim().map_err(|_| mismatch("A must be square"))?;
    let n2 = d.square_dim().map_err(|_| mismatch("D must be square"))?;
    if b.rows != n1 || b.cols != n2 {
        return Err(mismatch(&format!(
            "B must be {n1}x{n2}, got {}x{}",
            b.rows, b.cols
        )));
    }
    if c.rows != n2 || c.cols != n1 {
        return Err(mismatch(&format!(
            "C must be {n2}x{n1}, got {}x{}",
            c.rows, c.cols
        )));
    }
    let n = n1 + n2;
    Ok(Matrix::from_fn(n, n, |i, j| match (i < n1, j < n1) {
        (true, true) => a.get(i, j),
        (true, false) => b.get(i, j - n1),
        (false, true) => c.get(i - n1, j),
        (false, false) => d.get(i - n1, j - n1),
    }))
}

fn mismatch(msg: &str) -> Error {
    Error::ShapeMismatch(msg.to_string())
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:>12.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &'a Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix add: shape mismatch")
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &'a Matrix) -> Matrix {
        self.same_shape(rhs).expect("matrix sub: shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        self.matmul(rhs).expect("matrix mul: shape mismatch")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale_real(-1.0)
    }
}

/// A `q` parameter in `[0, 1]` together with `p = sqrt(1 - q^2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QValue {
    q: f64,
    p: f64,
}

impl QValue {
    pub fn new(q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::QOutOfRange(q));
        }
        // (1-q)(1+q) keeps p accurate near q = 1
        let p = ((1.0 - q) * (1.0 + q)).sqrt();
        Ok(QValue { q, p })
    }

    #[inline]
    pub fn q(&self) -> f64 {
        self.q
    }

    #[inline]
    pub fn p(&self) -> f64 {
        self.p
    }

    /// `n` equally spaced values from 0 to 1 inclusive.
    pub fn grid(n: usize) -> Result<Vec<QValue>> {
        if n < 2 {
            return Err(Error::InvalidConfig(format!(
                "q grid needs at least 2 points, got {n}"
            )));
        }
        (0..n)
            .map(|k| {
                let q = if k == n - 1 {
                    1.0
                } else {
                    k as f64 / (n - 1) as f64
                };
                QValue::new(q)
            })
            .collect()
    }
}
