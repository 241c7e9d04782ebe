#![allow(dead_code)]

use std::collections::BTreeMap;

use nctori_core::arith::factorize;
use nctori_core::invariants::{Block, BlockSpec};
use nctori_core::wfun::AbelianGroup;

/// `C_n` for `n <= 12`, `-C_n` for odd `n <= 12`, `I_m` for `m <= 3`.
pub fn block_alphabet() -> Vec<Block> {
    let mut out: Vec<Block> = (1..=12).map(Block::Cyclotomic).collect();
    out.extend((1..=12).step_by(2).map(Block::NegCyclotomic));
    out.extend((1..=3).map(Block::Identity));
    out
}

/// Every multiset of alphabet blocks with total dimension in `1..=max_dim`.
pub fn block_family(max_dim: usize) -> Vec<BlockSpec> {
    fn go(alpha: &[Block], start: usize, room: usize, cur: &mut Vec<Block>, out: &mut Vec<BlockSpec>) {
        if !cur.is_empty() {
            out.push(BlockSpec::new(cur.clone()).unwrap());
        }
        for (i, b) in alpha.iter().enumerate().skip(start) {
            if b.dim() <= room {
                cur.push(*b);
                go(alpha, i, room - b.dim(), cur, out);
                cur.pop();
            }
        }
    }
    let alpha = block_alphabet();
    let mut out = Vec::new();
    go(&alpha, 0, max_dim, &mut Vec::new(), &mut out);
    out
}

/// A representative whose realization is permutation-similar to that of
/// `spec`: `C_1` and identity blocks merge into one identity block, `-C_1`
/// is the same 1x1 matrix as `C_2`, and blocks are sorted.
pub fn similarity_class(spec: &BlockSpec) -> BlockSpec {
    let mut ones = 0;
    let mut rest = Vec::new();
    for b in spec.blocks() {
        match *b {
            Block::Identity(m) => ones += m,
            Block::Cyclotomic(1) => ones += 1,
            Block::NegCyclotomic(1) => rest.push(Block::Cyclotomic(2)),
            other => rest.push(other),
        }
    }
    rest.sort();
    if ones > 0 {
        rest.push(Block::Identity(ones));
    }
    BlockSpec::new(rest).unwrap()
}

pub fn group_classes(family: &[BlockSpec]) -> BTreeMap<String, BlockSpec> {
    family.iter().map(|s| {
        let c = similarity_class(s);
        (c.to_string(), c)
    }).collect()
}

/// Every finite abelian group of order `2..=max_order`, in primary form.
pub fn finite_abelian_groups(max_order: u64) -> Vec<AbelianGroup> {
    fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for k in (1..=n.min(max)).rev() {
            for mut rest in partitions(n - k, k) {
                rest.insert(0, k);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for n in 2..=max_order {
        let mut choices: Vec<Vec<u64>> = vec![vec![]];
        for &(p, e) in factorize(n).unwrap().pairs() {
            let mut next = Vec::new();
            for c in &choices {
                for part in partitions(e, e) {
                    let mut c = c.clone();
                    c.extend(part.iter().map(|&k| p.pow(k)));
                    next.push(c);
                }
            }
            choices = next;
        }
        out.extend(choices.into_iter().map(|t| AbelianGroup::new(t, 0).unwrap()));
    }
    out
}
