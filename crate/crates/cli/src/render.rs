//! JSON and text renderings of verdicts and reports.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde_json::{json, Number, Value};

use nctori_core::classify::{ActionReport, Reason, Verdict};
use nctori_core::ktheory::RankInfo;

fn number(v: &BigUint) -> Value {
    Value::Number(v.to_string().parse::<Number>().expect("decimal digits"))
}

pub fn rank_info(r: &RankInfo) -> Value {
    let kind = if r.is_exact() { "exact" } else { "at_least" };
    json!({ "kind": kind, "value": number(r.value()) })
}

fn ranks(v: &Option<Vec<BigUint>>) -> Value {
    v.as_ref().map_or(Value::Null, |r| Value::Array(r.iter().map(number).collect()))
}

pub fn verdict_json(v: &Verdict) -> Value {
    let r = v.realization.as_ref();
    json!({
        "d": v.d,
        "input": v.input,
        "realizable": v.realizable,
        "simple_action": v.simple_action_exists,
        "reason": v.reason.to_string(),
        "order": r.map(|r| r.order),
        "blocks": r.map_or_else(Vec::new, |r| r.blocks.blocks().iter().map(ToString::to_string).collect()),
        "k0": v.k.as_ref().map(|k| rank_info(&k.k0)),
        "k1": v.k.as_ref().map(|k| rank_info(&k.k1)),
        "AT": v.is_at,
        "AF_computed": v.is_af_computed,
        "AF_paper": v.is_af_paper,
        "divergence": v.divergence,
    })
}

pub fn report_json(r: &ActionReport) -> Value {
    json!({
        "dim": r.dim,
        "order": r.order,
        "free": r.free,
        "blocks": r.blocks.as_ref().map(|b| b.blocks().iter().map(ToString::to_string).collect::<Vec<_>>()),
        "oracle_ranks": ranks(&r.oracle_ranks),
        "dp_ranks": ranks(&r.dp_ranks),
        "s1": r.s1.as_ref().map(number),
        "k1": r.k1.as_ref().map(rank_info),
        "invariant_space_dim": r.invariant_space_dim,
        "nondegenerate_invariant_exists": r.witness.is_some(),
    })
}

/// ANSI styling that collapses to plain text when disabled.
#[derive(Debug, Clone, Copy)]
pub struct Style {
    pub color: bool,
}

impl Style {
    fn paint(self, code: &str, s: &str) -> String {
        if self.color { format!("\x1b[{code}m{s}\x1b[0m") } else { s.to_string() }
    }

    pub fn yes_no(self, b: bool) -> String {
        if b { self.paint("32", "yes") } else { self.paint("31", "no") }
    }

    pub fn bold(self, s: &str) -> String {
        self.paint("1", s)
    }
}

fn k_text(r: Option<&RankInfo>) -> String {
    r.map_or_else(|| "-".to_string(), ToString::to_string)
}

pub fn verdict_text(v: &Verdict, style: Style) -> String {
    let mut out = String::new();
    let head = format!("d={} G={} W={}", v.d, v.input, v.w);
    let status = match v.reason {
        Reason::WTooBig => format!("not realizable (W = {} > d = {})", v.w, v.d),
        Reason::GapOne => "no simple action (gap one)".to_string(),
        Reason::Exists => "simple action exists".to_string(),
    };
    let _ = writeln!(out, "{}: {status}", style.bold(&head));
    if let Some(r) = &v.realization {
        let _ = writeln!(out, "  blocks       {}", r.blocks);
        let _ = writeln!(out, "  order        {}", r.order);
        if r.pseudo_simple {
            let _ = writeln!(out, "  theta        pseudo-simple");
        }
    }
    if let Some(k) = &v.k {
        let _ = writeln!(out, "  K0           {}", k.k0);
        let _ = writeln!(out, "  K1           {}", k.k1);
    }
    let _ = writeln!(
        out,
        "  AT {}  AF computed {}  AF closed form {}{}",
        style.yes_no(v.is_at),
        style.yes_no(v.is_af_computed),
        style.yes_no(v.is_af_paper),
        if v.divergence { "  (divergent)" } else { "" }
    );
    out
}

pub const TABLE_HEADER: &str = "   d     n     W  exists  AT   AF_computed  AF_paper  k1";

pub fn table_row(v: &Verdict, n: u64) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    format!(
        "{:>4}  {:>4}  {:>4}  {:<6}  {:<3}  {:<11}  {:<8}  {}",
        v.d,
        n,
        v.w,
        yn(v.simple_action_exists),
        yn(v.is_at),
        yn(v.is_af_computed),
        yn(v.is_af_paper),
        k_text(v.k.as_ref().map(|k| &k.k1)),
    )
}

fn ranks_text(r: &Option<Vec<BigUint>>) -> String {
    r.as_ref().map_or_else(
        || "-".to_string(),
        |r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
    )
}

pub fn report_text(r: &ActionReport, style: Style) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dimension            {}", r.dim);
    let _ = writeln!(out, "order                {}", r.order);
    let _ = writeln!(out, "free outside origin  {}", style.yes_no(r.free));
    let _ = writeln!(out, "blocks               {}", r.blocks.as_ref().map_or("unrecognized".into(), ToString::to_string));
    let _ = writeln!(out, "oracle ranks         {}", ranks_text(&r.oracle_ranks));
    let _ = writeln!(out, "subset ranks         {}", ranks_text(&r.dp_ranks));
    let _ = writeln!(out, "s1                   {}", r.s1.as_ref().map_or("unavailable".into(), ToString::to_string));
    let _ = writeln!(out, "K1                   {}", k_text(r.k1.as_ref()));
    let _ = writeln!(out, "invariant space dim  {}", r.invariant_space_dim);
    let _ = writeln!(out, "nondegenerate Θ      {}", style.yes_no(r.witness.is_some()));
    out
}
