//! Graded K-rank bookkeeping with exact values and lower bounds.
//!
//! Every factor handled here has torsion-free K-theory, so the Künneth
//! sequence has no Tor term and ranks multiply as a graded ring.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::invariants::{free_outside_origin, s1, Block, BlockSpec};

/// A rank known exactly, or only bounded from below.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RankInfo {
    Exact(BigUint),
    AtLeast(BigUint),
}

impl RankInfo {
    pub fn exact(v: u64) -> Self {
        RankInfo::Exact(BigUint::from(v))
    }

    pub fn at_least(v: u64) -> Self {
        RankInfo::AtLeast(BigUint::from(v))
    }

    pub fn value(&self) -> &BigUint {
        match self {
            RankInfo::Exact(v) | RankInfo::AtLeast(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RankInfo::Exact(_))
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, RankInfo::Exact(v) if v.is_zero())
    }
}

impl Add for &RankInfo {
    type Output = RankInfo;

    fn add(self, rhs: &RankInfo) -> RankInfo {
        let v = self.value() + rhs.value();
        if self.is_exact() && rhs.is_exact() {
            RankInfo::Exact(v)
        } else {
            RankInfo::AtLeast(v)
        }
    }
}

impl Mul for &RankInfo {
    type Output = RankInfo;

    fn mul(self, rhs: &RankInfo) -> RankInfo {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return RankInfo::Exact(BigUint::zero());
        }
        let v = self.value() * rhs.value();
        if self.is_exact() && rhs.is_exact() {
            RankInfo::Exact(v)
        } else {
            RankInfo::AtLeast(v)
        }
    }
}

impl fmt::Display for RankInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankInfo::Exact(v) => write!(f, "{v}"),
            RankInfo::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// Ranks of `(K_0, K_1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedRank {
    pub k0: RankInfo,
    pub k1: RankInfo,
}

impl GradedRank {
    pub fn new(k0: RankInfo, k1: RankInfo) -> Self {
        GradedRank { k0, k1 }
    }

    /// The scalars: `(Exact 1, Exact 0)`.
    pub fn unit() -> Self {
        GradedRank::new(RankInfo::exact(1), RankInfo::exact(0))
    }
}

impl fmt::Display for GradedRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k0, self.k1)
    }
}

pub fn kunneth(a: &GradedRank, b: &GradedRank) -> GradedRank {
    GradedRank {
        k0: &(&a.k0 * &b.k0) + &(&a.k1 * &b.k1),
        k1: &(&a.k0 * &b.k1) + &(&a.k1 * &b.k0),
    }
}

/// Graded product of any number of factors; the empty product is the unit.
pub fn kunneth_all<'a>(factors: impl IntoIterator<Item = &'a GradedRank>) -> GradedRank {
    factors.into_iter().fold(GradedRank::unit(), |acc, f| kunneth(&acc, f))
}

/// K-ranks of the commutative `m`-torus: `2^{m-1}` in each degree.
pub fn torus_k(m: usize) -> GradedRank {
    if m == 0 {
        return GradedRank::unit();
    }
    let half = BigUint::one() << (m - 1);
    GradedRank::new(RankInfo::Exact(half.clone()), RankInfo::Exact(half))
}

/// Crossed-product ranks for one cyclic action given by a block spec that
/// is free outside the origin: `K_0` is positive but unknown, `K_1` is `s_1`.
pub fn action_k(spec: &BlockSpec) -> GradedRank {
    debug_assert!(
        spec.dim() > 4 || free_outside_origin(&spec.realize()).unwrap_or(false),
        "{spec} is not free outside the origin"
    );
    GradedRank::new(RankInfo::at_least(1), RankInfo::Exact(s1(spec)))
}

/// Ranks contributed by a single block. Identity blocks are residual torus
/// factors carrying the trivial action.
pub fn factor_k(block: &Block) -> GradedRank {
    match block {
        Block::Identity(m) => torus_k(*m),
        b => action_k(&BlockSpec::new(vec![*b]).expect("validated block")),
    }
}
