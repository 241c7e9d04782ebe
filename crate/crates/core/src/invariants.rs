//! Ranks of the fixed sublattices of exterior powers `(∧^m Z^d)^{<A>}` for
//! finite-order integer matrices.
//!
//! Two independent routes are provided. For matrices assembled from
//! cyclotomic companion blocks the eigenvalues are known roots of unity, and
//! the fixed rank in degree `m` equals the number of `m`-element index
//! subsets of the spectrum whose angles sum to an integer; this is counted
//! by a residue DP. The oracle instead forms the compound matrix and takes
//! `C(d, m) - rank(∧^m A - I)` over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::arith::{cyclotomic, totient};
use crate::error::{Error, Result};
use crate::exactlin::{companion, CompoundTower};
use crate::wfun::max_order;
use crate::{IntMatrix, Matrix};

/// Largest dimension accepted by the compound-matrix oracle.
pub const ORACLE_MAX_DIM: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    /// Companion matrix of `Φ_n`.
    Cyclotomic(u64),
    /// Negated companion matrix of `Φ_n`.
    NegCyclotomic(u64),
    Identity(usize),
}

impl Block {
    pub fn dim(&self) -> usize {
        match *self {
            Block::Cyclotomic(n) | Block::NegCyclotomic(n) => {
                totient(n).expect("validated block") as usize
            }
            Block::Identity(m) => m,
        }
    }

    /// Multiplicative order of the realized block.
    pub fn order(&self) -> u64 {
        match *self {
            Block::Cyclotomic(n) => n,
            // -ζ for a primitive n-th root ζ
            Block::NegCyclotomic(n) if n % 2 == 1 => 2 * n,
            Block::NegCyclotomic(n) if n % 4 == 2 => n / 2,
            Block::NegCyclotomic(n) => n,
            Block::Identity(_) => 1,
        }
    }

    pub fn realize(&self) -> IntMatrix {
        match *self {
            Block::Cyclotomic(n) => companion(&cyclotomic(n).expect("validated block")).expect("monic"),
            Block::NegCyclotomic(n) => -&Block::Cyclotomic(n).realize(),
            Block::Identity(m) => IntMatrix::identity(m),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Block::Cyclotomic(0) | Block::NegCyclotomic(0) => Err(Error::Zero),
            _ => Ok(()),
        }
    }

    fn push_angles(&self, out: &mut Vec<Ratio<u64>>) {
        match *self {
            Block::Cyclotomic(n) | Block::NegCyclotomic(n) => {
                let neg = matches!(self, Block::NegCyclotomic(_));
                for k in (0..n).filter(|k| k.gcd(&n) == 1) {
                    let mut q = Ratio::new(k, n);
                    if neg {
                        q += Ratio::new(1, 2);
                        if q >= Ratio::one() {
                            q -= Ratio::one();
                        }
                    }
                    out.push(q);
                }
            }
            Block::Identity(m) => out.extend(std::iter::repeat_n(Ratio::zero(), m)),
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Cyclotomic(n) => write!(f, "C{n}"),
            Block::NegCyclotomic(n) => write!(f, "negC{n}"),
            Block::Identity(m) => write!(f, "I{m}"),
        }
    }
}

impl FromStr for Block {
    type Err = Error;

    /// `C<n>`, `negC<n>` or `I<m>`, with `n, m >= 1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad block {s:?}: expected C<n>, negC<n> or I<m>"));
        let (kind, digits) = if let Some(rest) = s.strip_prefix("negC") {
            ("negC", rest)
        } else if let Some(rest) = s.strip_prefix('C') {
            ("C", rest)
        } else if let Some(rest) = s.strip_prefix('I') {
            ("I", rest)
        } else {
            return Err(bad());
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n: u64 = digits.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        Ok(match kind {
            "negC" => Block::NegCyclotomic(n),
            "C" => Block::Cyclotomic(n),
            _ => Block::Identity(n as usize),
        })
    }
}

/// Ordered list of diagonal blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BlockSpec(Vec<Block>);

impl BlockSpec {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        for b in &blocks {
            b.validate()?;
        }
        Ok(BlockSpec(blocks))
    }

    pub fn blocks(&self) -> &[Block] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.iter().map(Block::dim).sum()
    }

    pub fn order(&self) -> u64 {
        self.0.iter().fold(1, |acc, b| acc.lcm(&b.order()))
    }

    pub fn realize(&self) -> IntMatrix {
        let parts: Vec<IntMatrix> = self.0.iter().map(Block::realize).collect();
        IntMatrix::block_diag(&parts).expect("blocks are square")
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for BlockSpec {
    type Err = Error;

    /// `+`-separated blocks, e.g. `C3+I2`.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Err(Error::Parse("empty block spec".into()));
        }
        BlockSpec::new(s.split('+').map(str::parse).collect::<Result<_>>()?)
    }
}

/// Eigenvalue angles `q ∈ [0, 1)` (eigenvalue `exp(2πiq)`), sorted, with
/// multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSpectrum(Vec<Ratio<u64>>);

impl RotationSpectrum {
    pub fn angles(&self) -> &[Ratio<u64>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Common denominator of all angles.
    pub fn modulus(&self) -> u64 {
        self.0.iter().fold(1, |acc, q| acc.lcm(q.denom()))
    }
}

pub fn rotation_spectrum(spec: &BlockSpec) -> RotationSpectrum {
    let mut out = Vec::with_capacity(spec.dim());
    for b in spec.blocks() {
        b.push_angles(&mut out);
    }
    out.sort();
    RotationSpectrum(out)
}

fn binomial_row(c: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for j in 1..=c {
        let next = &row[j - 1] * BigUint::from(c - j + 1) / BigUint::from(j);
        row.push(next);
    }
    row
}

/// Fixed ranks for every degree `0..=d`, by counting integer-sum subsets.
pub fn invariant_ranks(spec: &BlockSpec) -> Vec<BigUint> {
    let spectrum = rotation_spectrum(spec);
    let d = spectrum.len();
    let modulus = spectrum.modulus() as usize;
    let mut classes: BTreeMap<usize, usize> = BTreeMap::new();
    for q in spectrum.angles() {
        let residue = (*q.numer() * (modulus as u64 / *q.denom())) as usize;
        *classes.entry(residue).or_default() += 1;
    }
    // ways[count][residue]
    let mut ways = vec![vec![BigUint::zero(); modulus]; d + 1];
    ways[0][0] = BigUint::one();
    let mut seen = 0;
    for (&value, &mult) in &classes {
        let binom = binomial_row(mult);
        let mut next = vec![vec![BigUint::zero(); modulus]; d + 1];
        for (count, row) in ways.iter().enumerate().take(seen + 1) {
            for (residue, w) in row.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                for (j, b) in binom.iter().enumerate() {
                    let r = (residue + j * value) % modulus;
                    next[count + j][r] += w * b;
                }
            }
        }
        ways = next;
        seen += mult;
    }
    ways.into_iter().map(|mut row| std::mem::take(&mut row[0])).collect()
}

/// Rank of `(∧^m Z^d)^{<A>}` for the realization of `spec`.
pub fn invariant_rank(spec: &BlockSpec, m: usize) -> Result<BigUint> {
    let d = spec.dim();
    if m > d {
        return Err(Error::DegreeOutOfRange { m, d });
    }
    Ok(invariant_ranks(spec).swap_remove(m))
}

fn oracle_tower(a: &IntMatrix) -> Result<CompoundTower<crate::Integer>> {
    let d = a.require_square()?;
    if d > ORACLE_MAX_DIM {
        return Err(Error::OracleTooLarge { d, max: ORACLE_MAX_DIM });
    }
    CompoundTower::new(a)
}

fn fixed_rank(tower: &mut CompoundTower<crate::Integer>, m: usize) -> Result<BigUint> {
    let shifted = tower.level(m)?.minus_identity()?;
    let size = shifted.rows();
    // machine-width elimination first; exact big-integer elimination on overflow
    let narrow = checked_rank_as::<i64>(&shifted).or_else(|| checked_rank_as::<i128>(&shifted));
    let rank = narrow.unwrap_or_else(|| shifted.rank());
    Ok(BigUint::from(size - rank))
}

fn checked_rank_as<T>(m: &IntMatrix) -> Option<usize>
where
    T: crate::Scalar
        + for<'a> TryFrom<&'a crate::Integer>
        + num_traits::CheckedMul
        + num_traits::CheckedSub
        + num_traits::CheckedDiv,
{
    let data = m.data().iter().map(|v| T::try_from(v).ok()).collect::<Option<Vec<T>>>()?;
    Matrix::new(m.rows(), m.cols(), data).ok()?.checked_rank()
}

/// `C(d, m) - rank(∧^m A - I)`, computed with exact integer elimination.
pub fn invariant_rank_oracle(a: &IntMatrix, m: usize) -> Result<BigUint> {
    let mut tower = oracle_tower(a)?;
    fixed_rank(&mut tower, m)
}

/// The oracle for every degree `0..=d`, sharing one compound tower.
pub fn invariant_ranks_oracle(a: &IntMatrix) -> Result<Vec<BigUint>> {
    let mut tower = oracle_tower(a)?;
    (0..=tower.dim()).map(|m| fixed_rank(&mut tower, m)).collect()
}

/// `s_1`: the sum of fixed ranks over odd degrees. Freeness of the action
/// is the caller's responsibility.
pub fn s1(spec: &BlockSpec) -> BigUint {
    invariant_ranks(spec).into_iter().skip(1).step_by(2).sum()
}

/// Sum of fixed ranks over even degrees. Reported as a diagnostic only; it
/// is not claimed to equal the K_0 rank.
pub fn even_invariant_sum(spec: &BlockSpec) -> BigUint {
    invariant_ranks(spec).into_iter().step_by(2).sum()
}

/// Whether every nontrivial power of `a` fixes only the origin.
pub fn free_outside_origin(a: &IntMatrix) -> Result<bool> {
    let d = a.require_square()?;
    let bound = max_order(d as u64);
    let k = a.order(bound)?.finite().ok_or(Error::NotFinite { bound })?;
    let mut power = IntMatrix::identity(d);
    for _ in 1..k {
        power = power.try_mul(a)?;
        if power.minus_identity()?.det()?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Split `a` into its finest block-diagonal decomposition and match each
/// block against identity, `C_n` and `-C_n`. Adjacent identity blocks merge.
pub fn recognize_blocks(a: &IntMatrix) -> Option<BlockSpec> {
    let d = a.rows();
    if !a.is_square() {
        return None;
    }
    let mut blocks: Vec<Block> = Vec::new();
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && !splits_at(a, start, end) {
            end += 1;
        }
        let idx: Vec<usize> = (start..end).collect();
        let block = classify_block(&a.submatrix(&idx, &idx))?;
        match (blocks.last_mut(), block) {
            (Some(Block::Identity(m)), Block::Identity(k)) => *m += k,
            _ => blocks.push(block),
        }
        start = end;
    }
    BlockSpec::new(blocks).ok()
}

fn splits_at(a: &IntMatrix, start: usize, end: usize) -> bool {
    let d = a.rows();
    (start..end).all(|i| (end..d).all(|j| a[(i, j)].is_zero() && a[(j, i)].is_zero()))
}

fn classify_block(b: &IntMatrix) -> Option<Block> {
    let s = b.rows();
    if b.is_identity() {
        return Some(Block::Identity(s));
    }
    // φ(n) = s forces n <= 2 s^2 + 2
    let limit = 2 * (s as u64) * (s as u64) + 2;
    let neg = -b;
    let candidates: Vec<u64> = (1..=limit).filter(|&n| totient(n).is_ok_and(|t| t as usize == s)).collect();
    // plain companions first, so -C_1 = C_2 reads as C2
    let plain = candidates.iter().find(|&&n| &Block::Cyclotomic(n).realize() == b).map(|&n| Block::Cyclotomic(n));
    plain.or_else(|| candidates.iter().find(|&&n| Block::Cyclotomic(n).realize() == neg).map(|&n| Block::NegCyclotomic(n)))
}
