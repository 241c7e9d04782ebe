//! Elementary number theory on machine integers and integer-coefficient
//! cyclotomic polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Prime factorization as `(p, e)` pairs with `p` strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    /// The prime powers `p^e`, ascending by prime.
    pub fn prime_powers(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, e)| p.pow(e))
    }

    pub fn value(&self) -> u64 {
        self.prime_powers().product()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut pairs = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        pairs.push((rest, 1));
    }
    Ok(Factorization(pairs))
}

pub fn is_prime(n: u64) -> bool {
    matches!(factorize(n), Ok(f) if f.pairs() == [(n, 1)])
}

/// Returns `(p, e)` when `n = p^e` with `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).ok()?.pairs() {
        [single] => Some(*single),
        _ => None,
    }
}

pub fn totient(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.pairs()
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut out = vec![1u64];
    for &(p, e) in f.pairs() {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for &d in &out {
            let mut q = d;
            for _ in 0..=e {
                next.push(q);
                q *= p;
            }
        }
        out = next;
    }
    out.sort_unstable();
    Ok(out)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Dense polynomial with arbitrary-precision integer coefficients, stored
/// ascending by degree. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] += BigInt::one();
        Self::new(coeffs)
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder of division by a monic polynomial.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::NotMonic)?;
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::new(Vec::new()), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let lead = std::mem::take(&mut rem[k + dd]);
            if lead.is_zero() {
                continue;
            }
            for (i, c) in divisor.coeffs[..dd].iter().enumerate() {
                rem[k + i] -= &lead * c;
            }
            quot[k] = lead;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `x^n - 1` by
/// `Φ_d` for every proper divisor `d` of `n`.
pub fn cyclotomic(n: u64) -> Result<IntPolynomial> {
    let divs = divisors(n)?;
    // divisors of a divisor are themselves divisors of n, so one bottom-up
    // pass over the sorted list suffices
    let mut table: Vec<IntPolynomial> = Vec::with_capacity(divs.len());
    for (idx, &d) in divs.iter().enumerate() {
        let mut poly = IntPolynomial::x_pow_minus_one(d as usize);
        for (j, &e) in divs[..idx].iter().enumerate() {
            if d % e == 0 {
                let (q, r) = poly.div_rem_monic(&table[j])?;
                debug_assert!(r.coeffs().is_empty());
                poly = q;
            }
        }
        table.push(poly);
    }
    Ok(table.pop().expect("n has at least one divisor"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(p: &IntPolynomial) -> Vec<i64> {
        p.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
        assert!(factorize(1).unwrap().is_empty());
        assert_eq!(factorize(54).unwrap().pairs(), &[(2, 1), (3, 3)]);
        assert_eq!(factorize(0), Err(Error::Zero));
        assert_eq!(factorize(9_999_991).unwrap().pairs(), &[(9_999_991, 1)]);
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(9).unwrap(), 6);
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(12).unwrap(), 4);
        assert_eq!(totient(0), Err(Error::Zero));
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(coeffs(&cyclotomic(1).unwrap()), vec![-1, 1]);
        assert_eq!(coeffs(&cyclotomic(2).unwrap()), vec![1, 1]);
        assert_eq!(coeffs(&cyclotomic(9).unwrap()), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(coeffs(&cyclotomic(12).unwrap()), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic(0), Err(Error::Zero));
    }

    #[test]
    fn cyclotomic_105_has_a_minus_two() {
        // smallest n with a coefficient outside {-1, 0, 1}
        let p = cyclotomic(105).unwrap();
        assert!(p.coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn divisor_product_is_x_pow_n_minus_one() {
        for n in 1..=200u64 {
            let prod = divisors(n)
                .unwrap()
                .into_iter()
                .fold(IntPolynomial::one(), |acc, d| acc.mul(&cyclotomic(d).unwrap()));
            assert_eq!(prod, IntPolynomial::x_pow_minus_one(n as usize), "n = {n}");
        }
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..=200u64 {
            let p = cyclotomic(n).unwrap();
            assert!(p.is_monic());
            assert_eq!(p.degree(), Some(totient(n).unwrap() as usize));
        }
    }

    #[test]
    fn totient_sums_over_divisors() {
        for n in 1..=1000u64 {
            let s: u64 = divisors(n).unwrap().iter().map(|&d| totient(d).unwrap()).sum();
            assert_eq!(s, n);
        }
    }

    #[test]
    fn display() {
        assert_eq!(cyclotomic(12).unwrap().to_string(), "x^4 - x^2 + 1");
        assert_eq!(cyclotomic(1).unwrap().to_string(), "x - 1");
    }
}
