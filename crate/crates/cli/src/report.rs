//! JSON and plain-text renderings of rule-engine and oracle results.
//!
//! JSON objects come out with sorted keys (serde_json's default map), so a
//! report is a pure function of its input.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use singulus_core::bettirules::{Dimension, Flag, SingularReport, Status, Verdict, Witness};
use singulus_core::oracle::{BettiComputation, Escalation, HilbertData, Slice};
use singulus_core::BettiTable;

pub const TOOL: &str = "singulus";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn tool_value() -> Value {
    json!({ "name": TOOL, "version": VERSION })
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
pub fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => Value::from(x),
        None => Value::from(v.to_string()),
    }
}

/// Integral rationals as [`big`], others as `"p/q"` strings.
pub fn rational(v: &BigRational) -> Value {
    if v.is_integer() {
        big(&v.to_integer())
    } else {
        Value::from(v.to_string())
    }
}

fn rationals(vs: &[BigRational]) -> Value {
    Value::Array(vs.iter().map(rational).collect())
}

fn witness(w: &Witness) -> Value {
    match w {
        Witness::Int(v) => big(v),
        Witness::Rational(v) => rational(v),
        Witness::Interval(lo, hi) => json!([big(lo), big(hi)]),
        Witness::Bool(b) => Value::from(*b),
        Witness::Text(s) => Value::from(s.as_str()),
    }
}

pub fn table_value(t: &BettiTable) -> Value {
    let columns: Vec<Value> = t
        .columns()
        .iter()
        .enumerate()
        .map(|(i, c)| json!({ "k": i + 1, "degrees": c }))
        .collect();
    json!({ "n": t.n(), "d": t.d(), "columns": columns })
}

fn verdict_value(v: &Verdict) -> Value {
    match v {
        Verdict::Smooth => json!({ "kind": "smooth" }),
        Verdict::Singular { delta, degree } => json!({ "kind": "singular", "delta": delta, "degree": big(degree) }),
        Verdict::Inconsistent { reason } => json!({ "kind": "inconsistent", "reason": reason }),
    }
}

fn dimension_value(d: &Dimension) -> Value {
    match d {
        Dimension::Smooth => json!({ "kind": "smooth" }),
        Dimension::Singular { delta } => json!({ "kind": "singular", "delta": delta }),
        Dimension::Inconsistent { reason } => json!({ "kind": "inconsistent", "reason": reason }),
    }
}

fn notes(r: &SingularReport) -> Vec<String> {
    let mut out = Vec::new();
    if r.flags.contains(&Flag::KoszulShape) {
        out.push(
            "table of a smooth hypersurface: m_k = binom(n+1, k+1), all degrees k(d-1) (Koszul complex on the partials)"
                .to_string(),
        );
    }
    if r.flags.contains(&Flag::Cone) {
        out.push("d_{1,1} = 0: a linear relation among the partials, so the hypersurface is a cone".to_string());
    }
    if r.pd == r.n + 1 {
        out.push("pd M(f) = n + 1: the Jacobian ideal is not saturated".to_string());
    }
    out
}

/// Rule-engine report as a JSON value.
pub fn analysis_value(r: &SingularReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            let w: Map<String, Value> = c.witness.iter().map(|(k, v)| (k.to_string(), witness(v))).collect();
            json!({ "name": c.name, "status": c.status.as_str(), "condition": c.source, "witness": w })
        })
        .collect();
    let n_t: Vec<Value> = r
        .divisibility
        .iter()
        .map(|(t, dv)| match dv {
            Some(dv) => json!({ "t": t, "applicable": true, "value": big(&dv.n_t), "divisible": dv.divisible }),
            None => json!({ "t": t, "applicable": false }),
        })
        .collect();
    let hspog = r.hspog.as_ref().map_or(Value::Null, |h| {
        json!({ "index": h.index, "remaining_sum": h.remaining_sum, "sum_matches_d": h.sum_matches_d })
    });
    json!({
        "verdict": verdict_value(&r.verdict),
        "realizable": r.realizable(),
        "obstructions": r.obstructions(),
        "dimension": dimension_value(&r.dimension),
        "delta": match r.dimension { Dimension::Singular { delta } => Value::from(delta), _ => Value::Null },
        "degree_sigma": r.degree.as_ref().map_or(Value::Null, |d| rational(&d.as_rational())),
        "tau": r.tau.as_ref().map_or(Value::Null, big),
        "sigma": r.sigma.sigma.iter().map(big).collect::<Vec<_>>(),
        "sigma_expected": r.sigma.expected.iter().map(big).collect::<Vec<_>>(),
        "first_sigma_mismatch": r.sigma.first_mismatch,
        "projective_dimension": r.pd,
        "regularity": r.regularity.reg,
        "n_t": n_t,
        "flags": r.flags.iter().map(Flag::as_str).collect::<Vec<_>>(),
        "hspog": hspog,
        "hilbert_polynomial": r.hilbert_polynomial.as_deref().map_or(Value::Null, rationals),
        "checks": checks,
        "notes": notes(r),
    })
}

fn escalations_value(es: &[Escalation]) -> Value {
    Value::Array(
        es.iter()
            .map(|e| {
                let slice = match e.slice {
                    Slice::Dimension { k } => json!({ "kind": "dimension", "k": k }),
                    Slice::Betti { p, q } => json!({ "kind": "betti", "p": p, "q": q }),
                };
                let modular: Vec<Value> = e.modular.iter().map(|(p, v)| json!({ "prime": p, "value": v })).collect();
                json!({ "slice": slice, "modular": modular, "rational": e.rational })
            })
            .collect(),
    )
}

pub fn hilbert_value(h: &HilbertData) -> Value {
    json!({
        "values": h.values,
        "window": h.values.len() - 1,
        "polynomial": rationals(&h.polynomial),
        "k0": h.k0,
        "delta": h.delta,
        "degree_sigma": h.degree_sigma.as_ref().map_or(Value::Null, big),
        "tjurina": h.tjurina.as_ref().map_or(Value::Null, big),
        "escalations": escalations_value(&h.escalations),
    })
}

pub fn betti_value(b: &BettiComputation) -> Value {
    let betti: Vec<Value> = b
        .betti
        .iter()
        .map(|(&(p, q), &v)| json!({ "p": p, "q": q, "value": v }))
        .collect();
    json!({
        "status": "ok",
        "table": table_value(&b.table),
        "betti": betti,
        "max_degree": b.max_degree,
        "primes": b.primes,
        "escalations": escalations_value(&b.escalations),
    })
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// text

fn runs(c: &[u64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < c.len() {
        let mut j = i;
        while j < c.len() && c[j] == c[i] {
            j += 1;
        }
        if j - i > 1 {
            parts.push(format!("{}x{}", c[i], j - i));
        } else {
            parts.push(c[i].to_string());
        }
        i = j;
    }
    parts.join(" ")
}

pub fn table_text(t: &BettiTable, out: &mut String) {
    let _ = writeln!(out, "table n={} d={}", t.n(), t.d());
    let _ = writeln!(out, "  {:>3}  {:>5}  degrees", "k", "m_k");
    for (i, c) in t.columns().iter().enumerate() {
        let _ = writeln!(out, "  {:>3}  {:>5}  {}", i + 1, c.len(), runs(c));
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Smooth => "smooth".into(),
        Verdict::Singular { delta, degree } => format!("singular, dim {delta}, degree {degree}"),
        Verdict::Inconsistent { reason } => format!("inconsistent ({reason})"),
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Int(v) => v.to_string(),
        Witness::Rational(v) => v.to_string(),
        Witness::Interval(lo, hi) => format!("[{lo}, {hi}]"),
        Witness::Bool(b) => b.to_string(),
        Witness::Text(s) => s.clone(),
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn join<T: ToString>(vs: impl IntoIterator<Item = T>) -> String {
    vs.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn analysis_text(r: &SingularReport, out: &mut String) {
    let delta = match r.dimension {
        Dimension::Singular { delta } => Some(delta),
        _ => None,
    };
    let _ = writeln!(out, "verdict: {}", verdict_text(&r.verdict));
    let _ = writeln!(
        out,
        "delta: {}  deg Sigma: {}  tau: {}",
        opt(delta),
        opt(r.degree.as_ref().map(|d| d.as_rational())),
        opt(r.tau.as_ref())
    );
    let _ = writeln!(out, "sigma:    {}", join(&r.sigma.sigma));
    let _ = writeln!(out, "expected: {}", join(&r.sigma.expected));
    let _ = writeln!(out, "pd: {}  reg: {}", r.pd, opt(r.regularity.reg));
    if !r.flags.is_empty() {
        let _ = writeln!(out, "flags: {}", join(r.flags.iter().map(Flag::as_str)));
    }
    let _ = writeln!(out, "checks:");
    let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &r.checks {
        let w = c
            .witness
            .iter()
            .map(|(k, v)| format!("{k}={}", witness_text(v)))
            .collect::<Vec<_>>()
            .join(" ");
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::NotApplicable => "n/a",
        };
        let _ = writeln!(out, "  {:<width$}  {:<4}  {}", c.name, status, w);
    }
    let obstructions = r.obstructions();
    if obstructions.is_empty() {
        let _ = writeln!(out, "obstructions: none");
    } else {
        let _ = writeln!(out, "obstructions: {}", obstructions.join(", "));
    }
    for note in notes(r) {
        let _ = writeln!(out, "note: {note}");
    }
}

pub fn hilbert_text(h: &HilbertData, out: &mut String) {
    let _ = writeln!(out, "hilbert function (k = 0..{}): {}", h.values.len() - 1, join(&h.values));
    let poly = if h.polynomial.is_empty() {
        "0".to_string()
    } else {
        h.polynomial
            .iter()
            .enumerate()
            .rev()
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})k"),
                _ => format!("({c})k^{i}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    };
    let _ = writeln!(out, "hilbert polynomial: {poly}  (from k0 = {})", h.k0);
    let _ = writeln!(
        out,
        "delta: {}  deg Sigma: {}  tau: {}",
        h.delta.map_or_else(|| "empty".to_string(), |d| d.to_string()),
        opt(h.degree_sigma.as_ref()),
        opt(h.tjurina.as_ref())
    );
}
