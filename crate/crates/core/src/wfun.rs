//! Minimal-dimension cost functions: `W(n)` for element orders in
//! `GL_d(Z)`, `W(Z_n)` for cyclic groups and `W(G)` for finite abelian
//! groups, minimized over cyclic decompositions.

use std::collections::HashMap;
use std::fmt;

use crate::arith::{factorize, is_prime, prime_power};
use crate::error::{Error, Result};

/// `W(n)`: the least `d` such that `GL_d(Z)` has an element of order `n`.
pub fn w_order(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    let sum: u64 = f.pairs().iter().map(|&(p, e)| (p - 1) * p.pow(e - 1)).sum();
    let exactly_two = f.pairs().first() == Some(&(2, 1));
    Ok(if exactly_two { sum - 1 } else { sum })
}

/// `W(Z_n)`, which charges two dimensions for `Z_2`.
pub fn w_cyclic(n: u64) -> Result<u64> {
    match n {
        0 | 1 => Err(Error::TooSmall { what: "cyclic order", min: 2, got: n }),
        2 => Ok(2),
        _ => w_order(n),
    }
}

/// Every `n` with `W(n) <= d`, ascending.
pub fn realizable_orders(d: u64) -> Vec<u64> {
    let primes: Vec<u64> = (2..=d + 2).filter(|&p| is_prime(p)).collect();
    let mut out = Vec::new();
    // (next prime index, running n, running sum of totients, exactly one 2)
    let mut stack = vec![(0usize, 1u64, 0u64, false)];
    while let Some((idx, n, sum, two)) = stack.pop() {
        let w = if two { sum - 1 } else { sum };
        if w <= d {
            out.push(n);
        }
        for (k, &p) in primes.iter().enumerate().skip(idx) {
            let mut pe = p;
            let mut phi = p - 1;
            loop {
                let s = sum + phi;
                let exactly_two = p == 2 && pe == 2;
                let discount = u64::from(two || exactly_two);
                if s - discount > d {
                    break;
                }
                stack.push((k + 1, n * pe, s, two || exactly_two));
                pe *= p;
                phi *= p;
            }
        }
    }
    out.sort_unstable();
    out
}

/// The largest order of a finite-order element of `GL_d(Z)`.
pub fn max_order(d: u64) -> u64 {
    realizable_orders(d).into_iter().max().unwrap_or(1)
}

/// Finitely generated abelian group `(∏ Z_{p^e}) × Z^r`, torsion kept in
/// primary form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    torsion: Vec<u64>,
    free_rank: usize,
}

impl AbelianGroup {
    /// `torsion` lists prime powers `>= 2` in any order.
    pub fn new(mut torsion: Vec<u64>, free_rank: usize) -> Result<Self> {
        for &t in &torsion {
            if t < 2 || prime_power(t).is_none() {
                return Err(Error::NotPrimePower(t));
            }
        }
        torsion.sort_unstable();
        Ok(AbelianGroup { torsion, free_rank })
    }

    /// `Z_{n_1} × … × Z_{n_k} × Z^r`, splitting each `n_i` into primary parts.
    pub fn from_cyclic_orders(orders: &[u64], free_rank: usize) -> Result<Self> {
        let mut torsion = Vec::new();
        for &n in orders {
            if n < 2 {
                return Err(Error::TooSmall { what: "cyclic order", min: 2, got: n });
            }
            torsion.extend(factorize(n)?.prime_powers());
        }
        Self::new(torsion, free_rank)
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::from_cyclic_orders(&[n], 0)
    }

    pub fn free(r: usize) -> Self {
        AbelianGroup { torsion: Vec::new(), free_rank: r }
    }

    /// Prime-power torsion factors, ascending.
    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }

    pub fn has_trivial_torsion(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn torsion_part(&self) -> Self {
        AbelianGroup { torsion: self.torsion.clone(), free_rank: 0 }
    }
}

impl fmt::Display for AbelianGroup {
    /// Canonical text form, e.g. `Z2xZ9xZ^3`; the trivial group is `Z^0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self.torsion.iter().map(|t| format!("Z{t}")).collect();
        if self.free_rank > 0 || terms.is_empty() {
            terms.push(format!("Z^{}", self.free_rank));
        }
        write!(f, "{}", terms.join("x"))
    }
}

/// A splitting of the torsion into cyclic factors `Z_{n_1} × … × Z_{n_t}`,
/// each `n_l` a product of prime powers of distinct primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CyclicDecomposition {
    parts: Vec<u64>,
}

impl CyclicDecomposition {
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn cost(&self) -> u64 {
        self.parts.iter().map(|&n| w_cyclic(n).expect("parts are >= 2")).sum()
    }
}

impl fmt::Display for CyclicDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "1");
        }
        let terms: Vec<String> = self.parts.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", terms.join("x"))
    }
}

fn prime_of(q: u64) -> u64 {
    prime_power(q).expect("torsion entries are prime powers").0
}

type Best = (u64, Vec<u64>);

fn better(a: &Best, b: &Best) -> bool {
    (a.0, a.1.len(), &a.1) < (b.0, b.1.len(), &b.1)
}

fn best_split(rem: &[u64], memo: &mut HashMap<Vec<u64>, Best>) -> Best {
    if rem.is_empty() {
        return (0, Vec::new());
    }
    if let Some(hit) = memo.get(rem) {
        return hit.clone();
    }
    let head = rem[0];
    let rest = &rem[1..];
    let mut best: Option<Best> = None;
    // every subset of `rest` with pairwise distinct primes, none equal to head's
    let k = rest.len();
    for mask in 0u32..(1 << k) {
        let mut primes = vec![prime_of(head)];
        let mut order = head;
        let mut ok = true;
        for (i, &q) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let p = prime_of(q);
                if primes.contains(&p) {
                    ok = false;
                    break;
                }
                primes.push(p);
                order *= q;
            }
        }
        if !ok {
            continue;
        }
        let left: Vec<u64> =
            rest.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 0).map(|(_, &q)| q).collect();
        let (cost, mut parts) = best_split(&left, memo);
        parts.push(order);
        parts.sort_unstable();
        let cand = (cost + w_cyclic(order).expect("order >= 2"), parts);
        if best.as_ref().is_none_or(|b| better(&cand, b)) {
            best = Some(cand);
        }
    }
    let best = best.expect("the singleton part is always admissible");
    memo.insert(rem.to_vec(), best.clone());
    best
}

/// `W(G)` together with a minimizing decomposition. Ties prefer fewer parts,
/// then the lexicographically smallest sorted part list. The free rank is
/// ignored.
pub fn w_group(g: &AbelianGroup) -> (u64, CyclicDecomposition) {
    let mut memo = HashMap::new();
    let (cost, parts) = best_split(g.torsion(), &mut memo);
    (cost, CyclicDecomposition { parts })
}
