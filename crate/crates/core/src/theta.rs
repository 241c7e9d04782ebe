//! Skew-symmetric `Θ = A_0 + Σ_k A_k θ_k` with rational coefficient
//! matrices and formal symbols `θ_k`, where `{1, θ_1, …, θ_s}` is taken to
//! be linearly independent over the rationals.
//!
//! With that independence, `Θx ∈ Z^d` forces `A_k x = 0` for every `k >= 1`,
//! so nondegeneracy reduces to an exact rank condition on the symbolic part.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::primitive_integer_vector;
use crate::{IntMatrix, RatMatrix, Rational};

/// A formal irrational `θ_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(pub usize);

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "θ{}", self.0)
    }
}

/// An element `c_0 + Σ c_k θ_k` of `Q + Σ Qθ_k`. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairingValue {
    pub constant: Rational,
    pub coefficients: Vec<(Symbol, Rational)>,
}

impl PairingValue {
    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coefficients.is_empty()
    }

    /// Coefficient of `symbol` (zero when absent).
    pub fn coefficient(&self, symbol: Symbol) -> Rational {
        self.coefficients
            .iter()
            .find(|(s, _)| *s == symbol)
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }
}

impl fmt::Display for PairingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Rational, String)> = self
            .coefficients
            .iter()
            .map(|(s, c)| (c.clone(), s.to_string()))
            .collect();
        if !self.constant.is_zero() {
            terms.push((self.constant.clone(), String::new()));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, sym)) in terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if sym.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{mag}{sym}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicSkew {
    rational: RatMatrix,
    terms: Vec<(Symbol, RatMatrix)>,
}

impl SymbolicSkew {
    pub fn new(rational: RatMatrix, terms: Vec<(Symbol, RatMatrix)>) -> Result<Self> {
        let d = rational.require_square()?;
        let mut seen = BTreeSet::new();
        for (s, m) in &terms {
            if m.rows() != d || m.cols() != d {
                return Err(Error::DimensionMismatch { expected: d, got: m.rows() });
            }
            if !seen.insert(*s) {
                return Err(Error::DuplicateSymbol(s.0));
            }
        }
        if !rational.is_skew() || terms.iter().any(|(_, m)| !m.is_skew()) {
            return Err(Error::NotSkew);
        }
        Ok(SymbolicSkew { rational, terms })
    }

    pub fn zero(d: usize) -> Self {
        SymbolicSkew { rational: RatMatrix::zeros(d, d), terms: Vec::new() }
    }

    /// `Σ_k B_k θ_{first + k}`: one fresh symbol per basis matrix.
    pub fn generic(basis: Vec<RatMatrix>, d: usize, first: usize) -> Result<Self> {
        let terms = basis.into_iter().enumerate().map(|(k, m)| (Symbol(first + k), m)).collect();
        Self::new(RatMatrix::zeros(d, d), terms)
    }

    pub fn dim(&self) -> usize {
        self.rational.rows()
    }

    pub fn rational_part(&self) -> &RatMatrix {
        &self.rational
    }

    pub fn terms(&self) -> &[(Symbol, RatMatrix)] {
        &self.terms
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.terms.iter().map(|(s, _)| *s)
    }

    /// The entry `θ_{ij}` as a linear form.
    pub fn entry(&self, i: usize, j: usize) -> PairingValue {
        PairingValue {
            constant: self.rational[(i, j)].clone(),
            coefficients: self
                .terms
                .iter()
                .filter(|(_, m)| !m[(i, j)].is_zero())
                .map(|(s, m)| (*s, m[(i, j)].clone()))
                .collect(),
        }
    }

    /// Block-diagonal sum. Symbol sets of the parts must be disjoint.
    pub fn direct_sum(parts: &[SymbolicSkew]) -> Result<Self> {
        let d: usize = parts.iter().map(SymbolicSkew::dim).sum();
        let mut offset = 0;
        let mut rational = RatMatrix::zeros(d, d);
        let mut terms = Vec::new();
        for p in parts {
            let n = p.dim();
            let embed = |src: &RatMatrix, dst: &mut RatMatrix| {
                for i in 0..n {
                    for j in 0..n {
                        dst[(offset + i, offset + j)] = src[(i, j)].clone();
                    }
                }
            };
            embed(&p.rational, &mut rational);
            for (s, m) in &p.terms {
                let mut big = RatMatrix::zeros(d, d);
                embed(m, &mut big);
                terms.push((*s, big));
            }
            offset += n;
        }
        Self::new(rational, terms)
    }

    /// Every coefficient matrix pushed through `S ↦ P^T S P`.
    fn congruent(&self, p: &RatMatrix) -> Result<Vec<RatMatrix>> {
        let pt = p.transpose();
        std::iter::once(&self.rational)
            .chain(self.terms.iter().map(|(_, m)| m))
            .map(|m| pt.try_mul(m)?.try_mul(p))
            .collect()
    }
}

impl fmt::Display for SymbolicSkew {
    /// Upper-triangular nonzero entries, one per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim();
        let mut any = false;
        for i in 0..d {
            for j in i + 1..d {
                let e = self.entry(i, j);
                if !e.is_zero() {
                    writeln!(f, "Θ[{},{}] = {e}", i + 1, j + 1)?;
                    any = true;
                }
            }
        }
        if !any {
            writeln!(f, "Θ = 0")?;
        }
        Ok(())
    }
}

fn check_len(theta: &SymbolicSkew, v: &[BigInt]) -> Result<()> {
    if v.len() != theta.dim() {
        return Err(Error::DimensionMismatch { expected: theta.dim(), got: v.len() });
    }
    Ok(())
}

/// The exponent `⟨Θx, y⟩ = y^T Θ x` of the cocycle, exactly.
pub fn pairing(theta: &SymbolicSkew, x: &[BigInt], y: &[BigInt]) -> Result<PairingValue> {
    check_len(theta, x)?;
    check_len(theta, y)?;
    let form = |m: &RatMatrix| -> Rational {
        let mut acc = Rational::zero();
        for (i, yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for (j, xj) in x.iter().enumerate() {
                if !xj.is_zero() && !m[(i, j)].is_zero() {
                    acc += &m[(i, j)] * Rational::from_integer(yi * xj);
                }
            }
        }
        acc
    };
    Ok(PairingValue {
        constant: form(&theta.rational),
        coefficients: theta
            .terms
            .iter()
            .map(|(s, m)| (*s, form(m)))
            .filter(|(_, c)| !c.is_zero())
            .collect(),
    })
}

/// `A^T Θ A = Θ`, coefficient by coefficient.
pub fn is_invariant(theta: &SymbolicSkew, a: &IntMatrix) -> Result<bool> {
    let d = a.require_square()?;
    if d != theta.dim() {
        return Err(Error::DimensionMismatch { expected: theta.dim(), got: d });
    }
    let moved = theta.congruent(&a.to_rational())?;
    let original = std::iter::once(&theta.rational).chain(theta.terms.iter().map(|(_, m)| m));
    Ok(moved.iter().zip(original).all(|(x, y)| x == y))
}

/// Basis of the skew matrices fixed by `S ↦ A^T S A`.
pub fn invariant_space(a: &IntMatrix) -> Result<Vec<RatMatrix>> {
    invariant_space_of_group(std::slice::from_ref(a))
}

/// Basis of the skew matrices fixed by every generator. Basis matrices are
/// scaled to primitive integer entries.
pub fn invariant_space_of_group(generators: &[IntMatrix]) -> Result<Vec<RatMatrix>> {
    let Some(first) = generators.first() else {
        return Err(Error::Parse("no generators".into()));
    };
    let d = first.require_square()?;
    for g in generators {
        if g.require_square()? != d {
            return Err(Error::DimensionMismatch { expected: d, got: g.rows() });
        }
    }
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    let n = pairs.len();
    // column p holds the upper triangle of A^T E_p A - E_p for E_p = e_i e_j^T - e_j e_i^T
    let mut system = RatMatrix::zeros(n * generators.len(), n);
    for (g_idx, a) in generators.iter().enumerate() {
        for (p, &(i, j)) in pairs.iter().enumerate() {
            for (row, &(k, l)) in pairs.iter().enumerate() {
                let mut v = &a[(i, k)] * &a[(j, l)] - &a[(j, k)] * &a[(i, l)];
                if (k, l) == (i, j) {
                    v -= BigInt::one();
                }
                if !v.is_zero() {
                    system[(g_idx * n + row, p)] = Rational::from_integer(v);
                }
            }
        }
    }
    Ok(system
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let ints = primitive_integer_vector(&v);
            let mut s = RatMatrix::zeros(d, d);
            for (p, &(i, j)) in pairs.iter().enumerate() {
                if !ints[p].is_zero() {
                    s[(i, j)] = Rational::from_integer(ints[p].clone());
                    s[(j, i)] = Rational::from_integer(-&ints[p]);
                }
            }
            s
        })
        .collect())
}

/// No nonzero `x ∈ Z^d` has `Θx ∈ Z^d`; equivalently the symbolic
/// coefficient matrices have no common rational kernel vector.
pub fn is_nondegenerate(theta: &SymbolicSkew) -> bool {
    let d = theta.dim();
    if d == 0 {
        return true;
    }
    let parts: Vec<RatMatrix> = theta.terms.iter().map(|(_, m)| m.clone()).collect();
    RatMatrix::vstack(&parts, d).is_ok_and(|stack| stack.rank() == d)
}

/// A nondegenerate `Θ` invariant under `a`, if one exists. The witness
/// carries one symbol per basis element of the invariant space.
pub fn nondegenerate_invariant_exists(a: &IntMatrix) -> Result<Option<SymbolicSkew>> {
    nondegenerate_invariant_for_group(std::slice::from_ref(a))
}

pub fn nondegenerate_invariant_for_group(generators: &[IntMatrix]) -> Result<Option<SymbolicSkew>> {
    let basis = invariant_space_of_group(generators)?;
    let d = generators[0].rows();
    let theta = SymbolicSkew::generic(basis, d, 1)?;
    Ok(is_nondegenerate(&theta).then_some(theta))
}
