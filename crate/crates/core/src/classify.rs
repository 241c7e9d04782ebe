//! Existence of actions on simple tori, their block realizations, and the
//! AT/AF verdicts for the resulting crossed products.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::invariants::{
    free_outside_origin, invariant_ranks, invariant_ranks_oracle, recognize_blocks, s1, Block,
    BlockSpec, ORACLE_MAX_DIM,
};
use crate::ktheory::{action_k, factor_k, kunneth_all, torus_k, GradedRank, RankInfo};
use crate::theta::{
    invariant_space, is_invariant, is_nondegenerate, nondegenerate_invariant_exists,
    nondegenerate_invariant_for_group, SymbolicSkew,
};
use crate::wfun::{max_order, w_group, w_order, AbelianGroup};
use crate::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    /// `W > d`: no element of the required order in `GL_d(Z)`.
    WTooBig,
    /// `d - W = 1`: realizable, but every invariant `Θ` is degenerate.
    GapOne,
    Exists,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::WTooBig => "w_too_big",
            Reason::GapOne => "gap_one",
            Reason::Exists => "exists",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub blocks: BlockSpec,
    /// Block-diagonal matrix of all blocks.
    pub matrix: IntMatrix,
    /// One generator per cyclic factor, each acting on its own blocks.
    pub generators: Vec<IntMatrix>,
    /// Order of `matrix`.
    pub order: u64,
    pub theta: Option<SymbolicSkew>,
    /// `theta` is `Θ' ⊕ 0` with `Θ'` nondegenerate rather than nondegenerate.
    pub pseudo_simple: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub d: usize,
    pub input: String,
    pub w: u64,
    pub realizable: bool,
    pub simple_action_exists: bool,
    pub reason: Reason,
    pub realization: Option<Realization>,
    pub k: Option<GradedRank>,
    pub is_at: bool,
    /// `K_1` of the realization is exactly zero.
    pub is_af_computed: bool,
    /// The closed-form predicate [`af_paper`] applied to each cyclic factor,
    /// with `d = W`.
    pub is_af_paper: bool,
    pub divergence: bool,
}

/// One cyclic factor `Z_n` laid out as blocks, with its K-ranks.
struct Factor {
    blocks: Vec<Block>,
    k: Vec<GradedRank>,
}

fn cyclic_factor(n: u64, flip_dim: usize) -> Result<Factor> {
    if n == 2 {
        let blocks = vec![Block::Cyclotomic(2); flip_dim];
        let k = vec![action_k(&BlockSpec::new(blocks.clone())?)];
        return Ok(Factor { blocks, k });
    }
    let mut powers: Vec<u64> = factorize(n)?.prime_powers().collect();
    if n % 4 == 2 {
        powers.retain(|&q| q != 2);
        // negating the odd part with the largest standalone s1 leaves the least behind
        let absorbed = powers
            .iter()
            .copied()
            .max_by_key(|&q| (s1(&BlockSpec::new(vec![Block::Cyclotomic(q)]).expect("q >= 3")), q))
            .expect("n/2 is odd and > 1");
        let blocks: Vec<Block> = powers
            .iter()
            .map(|&q| if q == absorbed { Block::NegCyclotomic(q) } else { Block::Cyclotomic(q) })
            .collect();
        let k = blocks.iter().map(factor_k).collect();
        return Ok(Factor { blocks, k });
    }
    let blocks: Vec<Block> = powers.into_iter().map(Block::Cyclotomic).collect();
    let k = blocks.iter().map(factor_k).collect();
    Ok(Factor { blocks, k })
}

/// Literal closed form: `n = 2·3^j·5^i·p^e` or `n = 2^k·3^j·5^i` with
/// `k != 1`, `j <= 2`, `i <= 1`, `p > 5` prime.
pub fn af_paper(n: u64) -> bool {
    let Ok(f) = factorize(n) else { return false };
    let exp = |p: u64| f.pairs().iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e);
    let small_ok = exp(3) <= 2 && exp(5) <= 1;
    let large: Vec<_> = f.pairs().iter().filter(|&&(p, _)| p > 5).collect();
    let first = exp(2) == 1 && small_ok && large.len() <= 1;
    let second = exp(2) != 1 && small_ok && large.is_empty();
    n >= 2 && (first || second)
}

fn check_d(d: usize) -> Result<()> {
    if d < 1 {
        return Err(Error::TooSmall { what: "dimension", min: 1, got: d as u64 });
    }
    Ok(())
}

struct Plan {
    d: usize,
    input: String,
    w: u64,
    free_rank: usize,
    factors: Vec<Factor>,
    closed_form_parts: bool,
}

impl Plan {
    fn verdict(self) -> Result<Verdict> {
        let Plan { d, input, w, free_rank, factors, closed_form_parts } = self;
        let w_us = w as usize;
        if w_us > d {
            return Ok(Verdict {
                d,
                input,
                w,
                realizable: false,
                simple_action_exists: false,
                reason: Reason::WTooBig,
                realization: None,
                k: None,
                is_at: false,
                is_af_computed: false,
                is_af_paper: false,
                divergence: false,
            });
        }
        let gap = d - w_us;
        let gap_one = gap == 1 && free_rank == 0;

        let mut blocks: Vec<Block> = factors.iter().flat_map(|f| f.blocks.iter().copied()).collect();
        // the full flip uses every dimension even though W(2) = 0
        let residual = d - blocks.iter().map(Block::dim).sum::<usize>();
        if residual > 0 {
            blocks.push(Block::Identity(residual));
        }
        let spec = BlockSpec::new(blocks)?;
        let matrix = spec.realize();
        let mut generators = Vec::new();
        let mut offset = 0;
        for f in &factors {
            let part: usize = f.blocks.iter().map(Block::dim).sum();
            let mut parts = Vec::new();
            if offset > 0 {
                parts.push(IntMatrix::identity(offset));
            }
            parts.push(BlockSpec::new(f.blocks.clone())?.realize());
            if d > offset + part {
                parts.push(IntMatrix::identity(d - offset - part));
            }
            generators.push(IntMatrix::block_diag(&parts)?);
            offset += part;
        }
        if generators.is_empty() {
            generators.push(IntMatrix::identity(d));
        }

        let (theta, pseudo_simple) = if gap_one {
            (None, false)
        } else if gap == 1 {
            // a nondegenerate Θ' on the torsion part, padded by a zero row and column
            let inner: Vec<IntMatrix> = if w_us == 0 {
                vec![IntMatrix::identity(0)]
            } else {
                generators
                    .iter()
                    .map(|g| {
                        let idx: Vec<usize> = (0..w_us).collect();
                        g.submatrix(&idx, &idx)
                    })
                    .collect()
            };
            let base = if w_us == 0 {
                Some(SymbolicSkew::zero(0))
            } else {
                nondegenerate_invariant_for_group(&inner)?
            };
            let padded = base.map(|t| SymbolicSkew::direct_sum(&[t, SymbolicSkew::zero(1)])).transpose()?;
            (padded, true)
        } else {
            (nondegenerate_invariant_for_group(&generators)?, false)
        };
        let exists = !gap_one && theta.is_some();
        let order = spec.order();
        let realization = Realization { blocks: spec, matrix, generators, order, theta, pseudo_simple };

        let k = exists.then(|| {
            let torus = torus_k(residual + free_rank);
            kunneth_all(factors.iter().flat_map(|f| f.k.iter()).chain(std::iter::once(&torus)))
        });
        let is_af_computed = free_rank == 0 && k.as_ref().is_some_and(|k| k.k1.is_exact_zero());
        let is_af_paper = exists && free_rank == 0 && gap == 0 && closed_form_parts;
        Ok(Verdict {
            d,
            input,
            w,
            realizable: true,
            simple_action_exists: exists,
            reason: if gap_one { Reason::GapOne } else { Reason::Exists },
            realization: Some(realization),
            k,
            is_at: exists,
            is_af_computed,
            is_af_paper,
            divergence: is_af_computed != is_af_paper,
        })
    }
}

/// Verdict for `Z_n` acting on a `d`-torus. `n = 2` is realized by the full
/// flip `-I_d`.
pub fn classify_cyclic(d: usize, n: u64) -> Result<Verdict> {
    check_d(d)?;
    if n < 2 {
        return Err(Error::TooSmall { what: "order", min: 2, got: n });
    }
    let w = w_order(n)?;
    let factors = if w as usize > d { Vec::new() } else { vec![cyclic_factor(n, d)?] };
    let mut v = Plan { d, input: format!("Z{n}"), w, free_rank: 0, factors, closed_form_parts: af_paper(n) }
        .verdict()?;
    if n == 2 {
        // the closed form charges Z_2 two dimensions
        v.is_af_paper = v.simple_action_exists && d == 2;
        v.divergence = v.is_af_computed != v.is_af_paper;
    }
    Ok(v)
}

/// Verdict for a finite abelian group, decomposed as in `W(G)`.
pub fn classify_group(d: usize, g: &AbelianGroup) -> Result<Verdict> {
    check_d(d)?;
    if g.free_rank() > 0 {
        return Err(Error::FreeRank(g.free_rank()));
    }
    if g.has_trivial_torsion() {
        return Err(Error::TrivialGroup);
    }
    group_plan(d, g)?.verdict()
}

fn group_plan(d: usize, g: &AbelianGroup) -> Result<Plan> {
    let (w, decomposition) = w_group(&g.torsion_part());
    let factors = if w as usize > d {
        Vec::new()
    } else {
        decomposition.parts().iter().map(|&n| cyclic_factor(n, 2)).collect::<Result<_>>()?
    };
    Ok(Plan {
        d,
        input: g.to_string(),
        w,
        free_rank: g.free_rank(),
        factors,
        closed_form_parts: decomposition.parts().iter().all(|&n| af_paper(n)),
    })
}

/// Verdict for `(∏ Z_{p^e}) × Z^r`. The free part acts trivially and adds
/// `r` circle factors; with `d - W = 1` and `r > 0` the witness is the
/// pseudo-simple `Θ' ⊕ 0`.
pub fn classify_fg(d: usize, g: &AbelianGroup) -> Result<Verdict> {
    check_d(d)?;
    if g.free_rank() == 0 && !g.has_trivial_torsion() {
        return classify_group(d, g);
    }
    group_plan(d, g)?.verdict()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionReport {
    pub dim: usize,
    pub order: u64,
    pub free: bool,
    /// Compound-matrix ranks per degree, when `dim <= ORACLE_MAX_DIM`.
    pub oracle_ranks: Option<Vec<BigUint>>,
    pub blocks: Option<BlockSpec>,
    /// Rotation-spectrum ranks per degree, when blocks are recognized.
    pub dp_ranks: Option<Vec<BigUint>>,
    /// Sum of odd-degree invariant ranks, when any rank method applies.
    pub s1: Option<BigUint>,
    /// `Exact(s1)`, only for actions free outside the origin.
    pub k1: Option<RankInfo>,
    pub invariant_space_dim: usize,
    pub witness: Option<SymbolicSkew>,
    /// Nondegeneracy of a supplied `Θ`.
    pub given_theta_nondegenerate: Option<bool>,
}

pub fn analyze_action(a: &IntMatrix, theta: Option<&SymbolicSkew>) -> Result<ActionReport> {
    let d = a.require_square()?;
    let bound = max_order(d as u64);
    let order = a.order(bound)?.finite().ok_or(Error::NotFinite { bound })?;
    let given_theta_nondegenerate = match theta {
        Some(t) => {
            if !is_invariant(t, a)? {
                return Err(Error::NotInvariant);
            }
            Some(is_nondegenerate(t))
        }
        None => None,
    };
    let free = free_outside_origin(a)?;
    let oracle_ranks = if d <= ORACLE_MAX_DIM { Some(invariant_ranks_oracle(a)?) } else { None };
    let blocks = recognize_blocks(a);
    let dp_ranks = blocks.as_ref().map(invariant_ranks);
    let s1 = dp_ranks
        .as_ref()
        .or(oracle_ranks.as_ref())
        .map(|r| r.iter().skip(1).step_by(2).fold(BigUint::zero(), |acc, x| acc + x));
    let k1 = if free { s1.clone().map(RankInfo::Exact) } else { None };
    Ok(ActionReport {
        dim: d,
        order,
        free,
        oracle_ranks,
        blocks,
        dp_ranks,
        s1,
        k1,
        invariant_space_dim: invariant_space(a)?.len(),
        witness: nondegenerate_invariant_exists(a)?,
        given_theta_nondegenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(orders: &[u64]) -> AbelianGroup {
        AbelianGroup::from_cyclic_orders(orders, 0).unwrap()
    }

    fn check_realization(v: &Verdict) {
        let r = v.realization.as_ref().unwrap();
        assert_eq!(r.matrix.order(r.order + 1).unwrap().finite(), Some(r.order));
        if let Some(t) = &r.theta {
            for g in &r.generators {
                assert!(is_invariant(t, g).unwrap());
            }
            assert_eq!(is_nondegenerate(t), !r.pseudo_simple);
        }
    }

    #[test]
    fn cyclic_examples() {
        for (d, n) in [(2, 6), (6, 9), (4, 12)] {
            let v = classify_cyclic(d, n).unwrap();
            assert!(v.simple_action_exists && v.is_af_computed && v.is_af_paper, "({d},{n})");
            check_realization(&v);
        }
        let v = classify_cyclic(6, 7).unwrap();
        assert!(v.is_at && !v.is_af_computed);
        assert_eq!(v.k.unwrap().k1, RankInfo::exact(2));

        let v = classify_cyclic(3, 3).unwrap();
        assert!(v.realizable && !v.simple_action_exists);
        assert_eq!(v.reason, Reason::GapOne);
        assert!(v.k.is_none());

        let v = classify_cyclic(2, 5).unwrap();
        assert!(!v.realizable && v.reason == Reason::WTooBig);
    }

    #[test]
    fn sign_absorption() {
        let v = classify_cyclic(18, 54).unwrap();
        assert_eq!(v.realization.as_ref().unwrap().blocks.to_string(), "negC27");
        assert!(v.is_af_computed && !v.is_af_paper && v.divergence);
        // absorbing 7 leaves C3 with s1 = 0
        let v = classify_cyclic(8, 42).unwrap();
        assert_eq!(v.realization.as_ref().unwrap().blocks.to_string(), "C3+negC7");
        assert!(v.is_af_computed && v.is_af_paper);
        check_realization(&v);
    }

    #[test]
    fn full_flip() {
        let v = classify_cyclic(3, 2).unwrap();
        assert_eq!(v.realization.as_ref().unwrap().blocks.to_string(), "C2+C2+C2");
        assert!(v.simple_action_exists && v.is_af_computed && !v.is_af_paper && v.divergence);
        let v = classify_cyclic(2, 2).unwrap();
        assert!(v.is_af_computed && v.is_af_paper && !v.divergence);
        assert_eq!(classify_cyclic(1, 2).unwrap().reason, Reason::GapOne);
    }

    #[test]
    fn paper_predicate() {
        let yes = [2, 3, 4, 6, 8, 9, 10, 12, 14, 15, 16, 18, 22, 45];
        let no = [7, 27, 25, 54, 50, 11, 21, 75, 154];
        assert!(yes.iter().all(|&n| af_paper(n)));
        assert!(no.iter().all(|&n| !af_paper(n)));
    }

    #[test]
    fn rejects() {
        assert!(classify_cyclic(0, 3).is_err());
        assert!(classify_cyclic(3, 1).is_err());
        assert_eq!(classify_group(2, &AbelianGroup::free(1)), Err(Error::FreeRank(1)));
        assert_eq!(classify_group(2, &AbelianGroup::free(0)), Err(Error::TrivialGroup));
    }

    #[test]
    fn group_examples() {
        let v = classify_group(2, &group(&[2])).unwrap();
        assert!(v.simple_action_exists && v.is_af_computed && v.is_af_paper);
        let v = classify_group(4, &group(&[2, 2])).unwrap();
        assert!(v.simple_action_exists && v.is_af_computed && v.is_af_paper);
        assert_eq!(v.realization.as_ref().unwrap().generators.len(), 2);
        check_realization(&v);
        assert!(!classify_group(3, &group(&[2, 2])).unwrap().realizable);
        let v = classify_group(2, &group(&[2, 3])).unwrap();
        assert!(v.simple_action_exists && v.is_af_computed);
        assert_eq!(v.realization.as_ref().unwrap().blocks.to_string(), "negC3");
    }

    #[test]
    fn fg_examples() {
        let g = AbelianGroup::from_cyclic_orders(&[3], 1).unwrap();
        let v = classify_fg(3, &g).unwrap();
        assert!(v.simple_action_exists && !v.is_af_computed);
        assert_eq!(v.k, Some(GradedRank::new(RankInfo::at_least(2), RankInfo::at_least(2))));
        let r = v.realization.as_ref().unwrap();
        assert!(r.pseudo_simple);
        check_realization(&v);

        let v = classify_fg(2, &AbelianGroup::free(1)).unwrap();
        assert_eq!(v.k, Some(torus_k(3)));
        assert!(!v.is_af_computed);

        let mut a = classify_fg(6, &group(&[9])).unwrap();
        let b = classify_cyclic(6, 9).unwrap();
        a.input.clone_from(&b.input);
        assert_eq!(a, b);
    }

    #[test]
    fn analyze_examples() {
        let flip = -&IntMatrix::identity(4);
        let r = analyze_action(&flip, None).unwrap();
        assert_eq!((r.order, r.free), (2, true));
        assert_eq!(r.s1, Some(BigUint::zero()));
        assert!(r.witness.is_some());

        let c3i1: BlockSpec = "C3+I1".parse().unwrap();
        let r = analyze_action(&c3i1.realize(), None).unwrap();
        assert!(!r.free && r.witness.is_none() && r.k1.is_none());

        let c9: BlockSpec = "C9".parse().unwrap();
        let r = analyze_action(&c9.realize(), None).unwrap();
        assert_eq!((r.order, r.free), (9, true));
        assert_eq!(r.s1, Some(BigUint::zero()));
        assert_eq!(r.oracle_ranks, r.dp_ranks);

        let shear = IntMatrix::from_i64(&[[1, 1], [0, 1]]).unwrap();
        assert!(matches!(analyze_action(&shear, None), Err(Error::NotFinite { .. })));
    }
}
