use super::{Matrix, Scalar};
use crate::error::{Error, Result};

/// All `m`-element subsets of `0..d` as sorted index lists, in lexicographic
/// order. This is the row/column order of compound matrices.
pub fn subsets(d: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m > d {
        return out;
    }
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        out.push(cur.clone());
        // advance the rightmost index that still has room
        let Some(i) = (0..m).rev().find(|&i| cur[i] < d - m + i) else { break };
        cur[i] += 1;
        for j in i + 1..m {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

struct Binomials(Vec<Vec<usize>>);

impl Binomials {
    fn new(n: usize) -> Self {
        let mut t = vec![vec![0usize; n + 1]; n + 1];
        for i in 0..=n {
            t[i][0] = 1;
            for j in 1..=i {
                t[i][j] = t[i - 1][j - 1] + if j < i { t[i - 1][j] } else { 0 };
            }
        }
        Binomials(t)
    }

    fn get(&self, n: usize, k: usize) -> usize {
        if k > n { 0 } else { self.0[n][k] }
    }

    /// Lexicographic rank of a sorted subset among all subsets of its size.
    fn lex_rank(&self, d: usize, subset: impl Iterator<Item = usize>, k: usize) -> usize {
        let mut rank = 0;
        let mut next = 0;
        for (i, s) in subset.enumerate() {
            for v in next..s {
                rank += self.get(d - 1 - v, k - 1 - i);
            }
            next = s + 1;
        }
        rank
    }
}

/// Exterior powers `∧^0 A, ∧^1 A, …` of a square matrix, each built from
/// the previous one by first-row cofactor expansion.
pub struct CompoundTower<T> {
    base: Matrix<T>,
    levels: Vec<Matrix<T>>,
    binom: Binomials,
}

impl<T: Scalar> CompoundTower<T> {
    pub fn new(base: &Matrix<T>) -> Result<Self> {
        let d = base.require_square()?;
        Ok(CompoundTower {
            base: base.clone(),
            levels: vec![Matrix::identity(1)],
            binom: Binomials::new(d),
        })
    }

    pub fn dim(&self) -> usize {
        self.base.rows()
    }

    /// The matrix of `∧^m A` in the lexicographic subset basis.
    pub fn level(&mut self, m: usize) -> Result<&Matrix<T>> {
        let d = self.dim();
        if m > d {
            return Err(Error::DegreeOutOfRange { m, d });
        }
        while self.levels.len() <= m {
            let next = self.build_next();
            self.levels.push(next);
        }
        Ok(&self.levels[m])
    }

    fn build_next(&self) -> Matrix<T> {
        let d = self.dim();
        let k = self.levels.len();
        let prev = &self.levels[k - 1];
        let subs = subsets(d, k);
        // per column subset: (removed column, sign, rank of the remainder)
        let col_terms: Vec<Vec<(usize, bool, usize)>> = subs
            .iter()
            .map(|t| {
                (0..k)
                    .map(|q| {
                        let rest = t.iter().enumerate().filter(|&(i, _)| i != q).map(|(_, &v)| v);
                        (t[q], q % 2 == 1, self.binom.lex_rank(d, rest, k - 1))
                    })
                    .collect()
            })
            .collect();
        let n = subs.len();
        let mut data = Vec::with_capacity(n * n);
        for s in &subs {
            let head = s[0];
            let tail_rank = self.binom.lex_rank(d, s[1..].iter().copied(), k - 1);
            let minors = prev.row(tail_rank);
            for terms in &col_terms {
                let mut acc = T::zero();
                for &(col, negative, rest) in terms {
                    let a = &self.base[(head, col)];
                    let minor = &minors[rest];
                    if a.is_zero() || minor.is_zero() {
                        continue;
                    }
                    let term = a.clone() * minor;
                    acc = if negative { acc - term } else { acc + term };
                }
                data.push(acc);
            }
        }
        Matrix { rows: n, cols: n, data }
    }
}

impl<T: Scalar> Matrix<T> {
    /// The `m`-th compound matrix: entry `(S, T)` is `det A[S, T]`.
    pub fn compound(&self, m: usize) -> Result<Self> {
        let mut tower = CompoundTower::new(self)?;
        tower.level(m).cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntMatrix;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn binom(n: usize, k: usize) -> usize {
        Binomials::new(n).get(n, k)
    }

    #[test]
    fn subset_order_is_lexicographic() {
        let s = subsets(4, 2);
        assert_eq!(s, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
        let b = Binomials::new(7);
        for k in 0..=7 {
            for (i, sub) in subsets(7, k).iter().enumerate() {
                assert_eq!(b.lex_rank(7, sub.iter().copied(), k), i);
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(IntMatrix::identity(4).compound(2).unwrap(), IntMatrix::identity(6));
        let a = IntMatrix::from_i64(&[[2, 1, 0], [1, 3, 1], [0, -1, 4]]).unwrap();
        let top = a.compound(3).unwrap();
        assert_eq!(top, IntMatrix::from_rows(vec![vec![a.det().unwrap()]]).unwrap());
        let d = IntMatrix::diag_i64(&[2, 3]);
        assert_eq!(d.compound(1).unwrap(), d);
        assert_eq!(d.compound(0).unwrap(), IntMatrix::identity(1));
        assert!(matches!(d.compound(3), Err(Error::DegreeOutOfRange { m: 3, d: 2 })));
    }

    fn square(d: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-3i64..=3, d * d).prop_map(move |v| {
            IntMatrix::new(d, d, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn entries_are_minors(a in square(4), m in 0usize..=4) {
            let c = a.compound(m).unwrap();
            let subs = subsets(4, m);
            for (i, s) in subs.iter().enumerate() {
                for (j, t) in subs.iter().enumerate() {
                    prop_assert_eq!(&c[(i, j)], &a.submatrix(s, t).det().unwrap());
                }
            }
        }

        #[test]
        fn multiplicative((a, b) in (1usize..=5).prop_flat_map(|d| (square(d), square(d))), m in 0usize..=5) {
            let d = a.rows();
            let m = m.min(d);
            let lhs = a.try_mul(&b).unwrap().compound(m).unwrap();
            let rhs = a.compound(m).unwrap().try_mul(&b.compound(m).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn sylvester_franke(a in (1usize..=5).prop_flat_map(square), m in 1usize..=5) {
            let d = a.rows();
            let m = m.min(d);
            let lhs = a.compound(m).unwrap().det().unwrap();
            let rhs = num_traits::pow(a.det().unwrap(), binom(d - 1, m - 1));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
