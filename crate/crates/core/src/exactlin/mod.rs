//! Dense exact matrices generic over the scalar type.
//!
//! Everything here is written against [`Scalar`], so the same code serves
//! arbitrary-precision integers ([`IntMatrix`](crate::IntMatrix)), exact
//! rationals ([`RatMatrix`](crate::RatMatrix)) and machine integers.
//! Elimination routines assume exact division whenever the divisor divides
//! the dividend, which holds for integers and for fields.

mod compound;
mod elim;
mod text;

use std::fmt;
use std::ops::{Index, IndexMut, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, NumRef, One, Zero};

use crate::arith::IntPolynomial;
use crate::error::{Error, Result};

pub use compound::{subsets, CompoundTower};
pub use elim::primitive_integer_vector;
pub use text::{format_matrix_text, parse_matrix_text};

/// Ring element usable as a matrix entry.
pub trait Scalar: Clone + fmt::Debug + PartialEq + NumRef + Neg<Output = Self> {}

impl<T> Scalar for T where T: Clone + fmt::Debug + PartialEq + NumRef + Neg<Output = Self> {}

/// Marker for scalars whose nonzero elements are all invertible.
pub trait Field: Scalar {}

impl<I> Field for num_rational::Ratio<I>
where
    I: Clone + num_integer::Integer + fmt::Debug,
    num_rational::Ratio<I>: Scalar,
{
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Outcome of [`Matrix::order`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixOrder {
    Finite(u64),
    /// No power up to the bound equals the identity.
    NotFinite,
}

impl MatrixOrder {
    pub fn finite(self) -> Option<u64> {
        match self {
            MatrixOrder::Finite(k) => Some(k),
            MatrixOrder::NotFinite => None,
        }
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, got: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j { v.is_one() } else { v.is_zero() }
                })
            })
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| self[(i, j)] == -self[(j, i)].clone())
            })
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let prod = a.clone() * b;
                        let slot = &mut out.data[i * rhs.cols + j];
                        *slot = std::mem::replace(slot, T::zero()) + prod;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(T, &T) -> T) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: rhs.rows * rhs.cols,
            });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a.clone(), b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// `self - I`
    pub fn minus_identity(&self) -> Result<Self> {
        let n = self.require_square()?;
        let mut out = self.clone();
        for i in 0..n {
            let slot = &mut out.data[i * n + i];
            *slot = std::mem::replace(slot, T::zero()) - T::one();
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.clone() * c)
    }

    pub fn pow(&self, mut k: u64) -> Result<Self> {
        let n = self.require_square()?;
        let mut base = self.clone();
        let mut acc = Self::identity(n);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Least `k >= 1` with `self^k = I`, searched up to `bound`.
    pub fn order(&self, bound: u64) -> Result<MatrixOrder> {
        self.require_square()?;
        let mut power = self.clone();
        for k in 1..=bound {
            if power.is_identity() {
                return Ok(MatrixOrder::Finite(k));
            }
            if k < bound {
                power = power.try_mul(self)?;
            }
        }
        Ok(MatrixOrder::NotFinite)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Direct sum of square blocks, in order.
    pub fn block_diag(blocks: &[Self]) -> Result<Self> {
        let mut n = 0;
        for b in blocks {
            n += b.require_square()?;
        }
        let mut out = Self::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(off + i, off + j)] = b[(i, j)].clone();
                }
            }
            off += b.rows;
        }
        Ok(out)
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[Self], cols: usize) -> Result<Self> {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            if p.cols != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: p.cols });
            }
            data.extend(p.data.iter().cloned());
            rows += p.rows;
        }
        Ok(Matrix { rows, cols, data })
    }
}

impl<T: Scalar + FromPrimitive> Matrix<T> {
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| T::from_i64(v).expect("i64 fits")).collect())
                .collect(),
        )
    }

    pub fn diag_i64(values: &[i64]) -> Self {
        Self::from_fn(values.len(), values.len(), |i, j| {
            if i == j { T::from_i64(values[i]).expect("i64 fits") } else { T::zero() }
        })
    }
}

impl Matrix<BigInt> {
    pub fn to_rational(&self) -> Matrix<BigRational> {
        self.map(|v| BigRational::from_integer(v.clone()))
    }
}

/// Companion matrix of a monic polynomial: ones on the subdiagonal and the
/// negated low coefficients in the last column.
pub fn companion(p: &IntPolynomial) -> Result<Matrix<BigInt>> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ConstantPolynomial),
    };
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let a = p.coeffs();
    Ok(Matrix::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -a[i].clone()
        } else if i == j + 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }))
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|a| -a.clone())
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let row = &cells[i * self.cols..(i + 1) * self.cols];
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols]))
            .finish()
    }
}
