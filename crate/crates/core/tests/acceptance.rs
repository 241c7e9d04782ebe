//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line
//! with its runtime; any failure makes the binary exit nonzero.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use nctori_core::classify::{analyze_action, classify_cyclic, classify_fg, classify_group, Reason};
use nctori_core::invariants::{
    invariant_rank, invariant_rank_oracle, invariant_ranks, invariant_ranks_oracle, s1, Block, BlockSpec,
};
use nctori_core::ktheory::{kunneth, kunneth_all, torus_k, GradedRank, RankInfo};
use nctori_core::theta::nondegenerate_invariant_exists;
use nctori_core::wfun::{w_group, w_order, AbelianGroup};
use nctori_core::IntMatrix;

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond { Ok(()) } else { Err(msg()) }
}

fn spec(s: &str) -> BlockSpec {
    s.parse().unwrap()
}

fn group(orders: &[u64], r: usize) -> AbelianGroup {
    AbelianGroup::from_cyclic_orders(orders, r).unwrap()
}

fn w_table() -> Check {
    let ns = [2, 3, 4, 5, 6, 7, 8, 9, 12, 54];
    let want = [0, 2, 2, 4, 2, 6, 4, 6, 4, 18];
    let got: Vec<u64> = ns.iter().map(|&n| w_order(n).unwrap()).collect();
    ensure(got == want, || format!("w_order table {got:?}"))?;
    ensure(w_group(&group(&[2, 2], 0)).0 == 4, || "W(Z2xZ2) != 4".into())?;
    ensure(w_group(&group(&[2, 3], 0)).0 == 2, || "W(Z2xZ3) != 2".into())
}

fn z9_example() -> Check {
    let c9 = spec("C9");
    let a = c9.realize();
    for m in [1, 3, 5] {
        let dp = invariant_rank(&c9, m).unwrap();
        let oracle = invariant_rank_oracle(&a, m).unwrap();
        ensure(dp.is_zero() && oracle.is_zero(), || format!("degree {m}: dp {dp}, oracle {oracle}"))?;
    }
    ensure(s1(&c9).is_zero(), || "s1(C9) != 0".into())?;
    let v = classify_cyclic(6, 9).unwrap();
    ensure(v.simple_action_exists && v.is_af_computed && v.is_af_paper, || format!("{v:?}"))
}

fn prime_closed_form() -> Check {
    for n in [3u64, 5, 7, 11] {
        let want = ((BigUint::from(1u8) << (n - 1)) - BigUint::from((n - 1) * (n - 1))) / BigUint::from(2 * n);
        let got = s1(&spec(&format!("C{n}")));
        ensure(got == want, || format!("s1(C{n}) = {got}, closed form {want}"))?;
    }
    let ranks = invariant_ranks_oracle(&spec("C7").realize()).unwrap();
    let odd: BigUint = ranks.iter().skip(1).step_by(2).sum();
    ensure(odd == BigUint::from(2u8), || format!("oracle s1(C7) = {odd}"))
}

fn even_order_vanishing() -> Check {
    let mut checked = 0;
    for s in common::block_family(10) {
        // the vanishing needs an action free outside the origin, which for
        // block sums means all blocks share one order
        let orders: BTreeSet<u64> = s.blocks().iter().map(Block::order).collect();
        if s.order() % 2 == 1 || orders.len() != 1 {
            continue;
        }
        ensure(s1(&s).is_zero(), || format!("s1({s}) = {}", s1(&s)))?;
        checked += 1;
    }
    ensure(checked > 100, || format!("only {checked} specs"))
}

fn gap_one_obstruction() -> Check {
    for d in 1..=10usize {
        for n in 2..=100u64 {
            let w = w_order(n).unwrap() as usize;
            let v = classify_cyclic(d, n).unwrap();
            let gap_one = w <= d && d - w == 1;
            ensure((v.reason == Reason::GapOne) == gap_one, || format!("({d},{n}) reason {:?}", v.reason))?;
            if gap_one {
                let a = &v.realization.as_ref().unwrap().matrix;
                ensure(nondegenerate_invariant_exists(a).unwrap().is_none(), || format!("({d},{n}) has a witness"))?;
            }
        }
    }
    Ok(())
}

fn rotation_algebra() -> Check {
    let exists: Vec<u64> = (2..=100).filter(|&n| classify_cyclic(2, n).unwrap().simple_action_exists).collect();
    ensure(exists == [2, 3, 4, 6], || format!("d=2 orders {exists:?}"))?;
    for n in exists {
        let v = classify_cyclic(2, n).unwrap();
        ensure(v.is_af_computed && v.is_af_paper, || format!("Z{n} not AF"))?;
    }
    let groups: Vec<String> = common::finite_abelian_groups(24)
        .iter()
        .filter(|g| classify_group(2, g).unwrap().simple_action_exists)
        .map(ToString::to_string)
        .collect();
    ensure(groups == ["Z2", "Z3", "Z4", "Z2xZ3"], || format!("d=2 groups {groups:?}"))
}

fn existence_sweep() -> Check {
    for d in 1..=12usize {
        for n in 2..=200u64 {
            let w = w_order(n).unwrap() as i64;
            let gap = d as i64 - w;
            let v = classify_cyclic(d, n).unwrap();
            let want = gap == 0 || gap > 1;
            ensure(v.simple_action_exists == want, || format!("({d},{n}) exists {}", v.simple_action_exists))?;
            if d % 2 == 0 {
                ensure(v.simple_action_exists == (w <= d as i64), || format!("({d},{n}) even-d form"))?;
            }
        }
    }
    Ok(())
}

fn oracle_equivalence() -> Check {
    let family = common::block_family(10);
    let classes = common::group_classes(&family);
    let mut oracle = std::collections::BTreeMap::new();
    for (key, rep) in &classes {
        oracle.insert(key.clone(), invariant_ranks_oracle(&rep.realize()).unwrap());
    }
    for s in &family {
        let key = common::similarity_class(s).to_string();
        let dp = invariant_ranks(s);
        ensure(dp == oracle[&key], || format!("{s}: dp {dp:?} oracle {:?}", oracle[&key]))?;
    }
    println!("      {} specs, {} similarity classes", family.len(), classes.len());
    Ok(())
}

fn divergence_ledger() -> Check {
    for (d, n) in [(18, 54), (20, 50)] {
        let v = classify_cyclic(d, n).unwrap();
        ensure(v.is_af_computed && !v.is_af_paper && v.divergence, || format!("({d},{n}) {v:?}"))?;
    }
    for n in 3..=48u64 {
        let d = w_order(n).unwrap() as usize;
        let v = classify_cyclic(d, n).unwrap();
        ensure(!v.divergence, || format!("divergence at ({d},{n})"))?;
    }
    Ok(())
}

fn kunneth_algebra() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    let rank = |rng: &mut StdRng| {
        let v = rng.gen_range(0..8);
        if rng.gen_bool(0.5) { RankInfo::exact(v) } else { RankInfo::at_least(v) }
    };
    for _ in 0..1000 {
        let [a, b, c] = [(); 3].map(|_| GradedRank::new(rank(&mut rng), rank(&mut rng)));
        ensure(kunneth(&a, &GradedRank::unit()) == a && kunneth(&GradedRank::unit(), &a) == a, || format!("unit {a}"))?;
        ensure(kunneth(&a, &b) == kunneth(&b, &a), || format!("commutativity {a} {b}"))?;
        let left = kunneth(&kunneth(&a, &b), &c);
        let right = kunneth(&a, &kunneth(&b, &c));
        ensure(left == right, || format!("associativity {a} {b} {c}"))?;
    }
    let mut acc = GradedRank::unit();
    for m in 1..=10 {
        acc = kunneth(&acc, &torus_k(1));
        ensure(acc == torus_k(m), || format!("torus {m}"))?;
    }
    let small: Vec<RankInfo> = (0..4).flat_map(|v| [RankInfo::exact(v), RankInfo::at_least(v)]).collect();
    let af: Vec<GradedRank> = small.iter().map(|k0| GradedRank::new(k0.clone(), RankInfo::exact(0))).collect();
    for a in &af {
        for b in &af {
            for c in &af {
                ensure(kunneth_all([a, b, c]).k1.is_exact_zero(), || format!("lemma {a} {b} {c}"))?;
            }
        }
    }
    Ok(())
}

fn full_flip() -> Check {
    for d in [2, 3, 4, 6] {
        let flip = -&IntMatrix::identity(d);
        let r = analyze_action(&flip, None).unwrap();
        ensure(r.free && r.s1 == Some(BigUint::zero()) && r.witness.is_some(), || format!("-I{d}: {r:?}"))?;
    }
    Ok(())
}

fn free_rank_instance() -> Check {
    let v = classify_fg(3, &group(&[3], 1)).unwrap();
    let want = GradedRank::new(RankInfo::at_least(2), RankInfo::at_least(2));
    ensure(v.simple_action_exists && v.k == Some(want) && !v.is_af_computed, || format!("{v:?}"))?;
    for d in 1..=6 {
        for r in 0..=4 {
            if d + r < 2 {
                continue;
            }
            let v = classify_fg(d, &AbelianGroup::free(r)).unwrap();
            ensure(v.k == Some(torus_k(d + r)), || format!("d={d} r={r}: {:?}", v.k))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("W table", w_table, 1),
        ("Z9 example", z9_example, 5),
        ("prime closed form", prime_closed_form, 10),
        ("even-order vanishing", even_order_vanishing, 30),
        ("gap-one obstruction", gap_one_obstruction, 60),
        ("d=2 completeness", rotation_algebra, 60),
        ("existence sweep", existence_sweep, 60),
        ("oracle equivalence", oracle_equivalence, 120),
        ("divergence ledger", divergence_ledger, 30),
        ("Kunneth algebra", kunneth_algebra, 5),
        ("full-flip recovery", full_flip, 5),
        ("free-rank instance", free_rank_instance, 1),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed < Duration::from_secs(budget), || format!("over the {budget}s budget"))
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({:.2}s)", i + 1, elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({:.2}s): {e}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
