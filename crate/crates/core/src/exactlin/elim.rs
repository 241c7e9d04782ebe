use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

use super::{Field, Matrix, Scalar};
use crate::error::Result;

struct Echelon<T> {
    rank: usize,
    swaps: usize,
    last_pivot: T,
}

/// Fraction-free (Bareiss) forward elimination in place. Every intermediate
/// entry is a minor of the input, so the division by the previous pivot is
/// exact over any integral domain.
fn bareiss<T: Scalar>(rows: usize, cols: usize, a: &mut [T], stop_on_gap: bool) -> Echelon<T> {
    let mut prev = T::one();
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            if stop_on_gap {
                break;
            }
            continue;
        };
        if p != r {
            for j in c..cols {
                a.swap(p * cols + j, r * cols + j);
            }
            swaps += 1;
        }
        let pivot = a[r * cols + c].clone();
        let (head, tail) = a.split_at_mut((r + 1) * cols);
        let pivot_row = &head[r * cols..];
        for row in tail.chunks_mut(cols) {
            let factor = std::mem::replace(&mut row[c], T::zero());
            let prev_is_one = prev.is_one();
            for j in c + 1..cols {
                let upper = &pivot_row[j];
                let cur = &row[j];
                if cur.is_zero() && (factor.is_zero() || upper.is_zero()) {
                    continue;
                }
                let mut v = if cur.is_zero() { T::zero() } else { pivot.clone() * cur };
                if !factor.is_zero() && !upper.is_zero() {
                    v = v - factor.clone() * upper;
                }
                if !prev_is_one && !v.is_zero() {
                    v = v / prev.clone();
                }
                row[j] = v;
            }
        }
        prev = pivot;
        r += 1;
    }
    Echelon { rank: r, swaps, last_pivot: prev }
}

/// Bareiss elimination that reports overflow instead of wrapping.
fn bareiss_checked<T>(rows: usize, cols: usize, a: &mut [T]) -> Option<usize>
where
    T: Scalar + CheckedMul + CheckedSub + CheckedDiv,
{
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else { continue };
        if p != r {
            for j in c..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let pivot = a[r * cols + c].clone();
        let (head, tail) = a.split_at_mut((r + 1) * cols);
        let pivot_row = &head[r * cols..];
        for row in tail.chunks_mut(cols) {
            let factor = std::mem::replace(&mut row[c], T::zero());
            for j in c + 1..cols {
                let upper = &pivot_row[j];
                let cur = &row[j];
                if cur.is_zero() && (factor.is_zero() || upper.is_zero()) {
                    continue;
                }
                let lhs = pivot.checked_mul(cur)?;
                let rhs = factor.checked_mul(upper)?;
                row[j] = lhs.checked_sub(&rhs)?.checked_div(&prev)?;
            }
        }
        prev = pivot;
        r += 1;
    }
    Some(r)
}

impl<T> Matrix<T>
where
    T: Scalar + CheckedMul + CheckedSub + CheckedDiv,
{
    /// Rank over machine integers, or `None` if an intermediate overflows.
    pub fn checked_rank(&self) -> Option<usize> {
        let mut work = self.data.clone();
        bareiss_checked(self.rows, self.cols, &mut work)
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn det(&self) -> Result<T> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(T::one());
        }
        let mut work = self.data.clone();
        let e = bareiss(n, n, &mut work, true);
        if e.rank < n {
            return Ok(T::zero());
        }
        Ok(if e.swaps % 2 == 0 { e.last_pivot } else { -e.last_pivot })
    }

    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        bareiss(self.rows, self.cols, &mut work, false).rank
    }
}

impl<T: Field> Matrix<T> {
    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            if p != r {
                for j in 0..cols {
                    m.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = T::one() / m[(r, c)].clone();
            for j in c..cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = m[(r, j)].clone() * &inv;
                }
            }
            for i in 0..rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * &m[(r, j)];
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }
}

/// Scale a rational vector to the primitive integer vector on the same ray
/// (first nonzero entry positive). The zero vector maps to zeros.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let denom = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&denom / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let flip = ints.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative);
    for x in &mut ints {
        *x = &*x / &g;
        if flip {
            *x = -&*x;
        }
    }
    ints
}
