//! Browser bindings. Each export takes plain strings and numbers and
//! returns a JSON document, so the page needs no glue beyond `JSON.parse`.

use locnil::classify::classify_with;
use locnil::modular::{certify_all, PrimeSet};
use locnil::orbit::{decide_nilpotency_with, orbit_prefix, OrbitLimits};
use locnil::trap::{trap_report, DEFAULT_TRAP_CAP};
use locnil::Polynomial;
use num_bigint::BigInt;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Page-side caps, smaller than the CLI defaults so a tab never hangs.
pub const MAX_STEPS: u64 = 100_000;
pub const MAX_BITS: u64 = 100_000;
pub const MAX_PRIME_BOUND: u64 = 5_000;
pub const MAX_SHOWN: u64 = 50;

fn limits() -> OrbitLimits {
    OrbitLimits { max_steps: MAX_STEPS, max_bits: MAX_BITS, ..OrbitLimits::default() }
}

fn poly(text: &str) -> Result<Polynomial, String> {
    let u: Polynomial = text.parse().map_err(|e| format!("u: {e}"))?;
    if u.is_zero() {
        return Err("u: the zero polynomial has no orbit".into());
    }
    Ok(u)
}

fn base(text: &str) -> Result<BigInt, String> {
    text.trim().parse().map_err(|_| format!("r: {text:?} is not an integer"))
}

fn excluded(text: &str) -> Result<PrimeSet, String> {
    let primes = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().map_err(|_| format!("A: {s:?} is not a number")))
        .collect::<Result<Vec<_>, _>>()?;
    PrimeSet::new(primes).map_err(|e| format!("A: {e}"))
}

fn value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// The orbit of `r` over Z together with the classifier's verdict.
pub fn orbit_json(u: &str, r: &str, excluded_primes: &str, shown: u64) -> Result<Value, String> {
    let (u, r, a) = (poly(u)?, base(r)?, excluded(excluded_primes)?);
    let lim = limits();
    let outcome = decide_nilpotency_with(&u, &r, &lim).map_err(|e| e.to_string())?;
    // stop the listing where the decision was reached
    let shown = shown.clamp(1, MAX_SHOWN).min(outcome.steps_used().max(1));
    let prefix = orbit_prefix(&u, &r, shown, &lim);
    let verdict = classify_with(&u, &r, &a, &lim).map_err(|e| e.to_string())?;
    Ok(json!({
        "u": u.to_string(),
        "r": r.to_string(),
        "outcome": value(&outcome),
        "prefix": prefix.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "verdict": value(&verdict),
    }))
}

/// `m_p` for every prime up to `prime_bound` outside `A`; refuted primes
/// carry `null` and their cycle.
pub fn mp_profile_json(u: &str, r: &str, excluded_primes: &str, prime_bound: u64) -> Result<Value, String> {
    let (u, r, a) = (poly(u)?, base(r)?, excluded(excluded_primes)?);
    if prime_bound > MAX_PRIME_BOUND {
        return Err(format!("prime bound is capped at {MAX_PRIME_BOUND} here"));
    }
    let certs = certify_all(&u, &r, &a, prime_bound);
    let refuted = certs.iter().filter(|c| c.is_refuted()).count();
    Ok(json!({
        "u": u.to_string(),
        "r": r.to_string(),
        "primes": certs.iter().map(|c| c.p).collect::<Vec<_>>(),
        "m_p": certs.iter().map(|c| c.m_p()).collect::<Vec<_>>(),
        "refuted": refuted,
        "first_refuting": certs.iter().find(|c| c.is_refuted()).map(|c| c.p),
        "certificates": value(&certs),
    }))
}

/// Steps to the origin for every point of `F_p^2` under the additive trap.
pub fn trap_grid_json(p: u64) -> Result<Value, String> {
    let report = trap_report(p, DEFAULT_TRAP_CAP).map_err(|e| e.to_string())?;
    Ok(value(&report))
}

fn export(doc: Result<Value, String>) -> Result<String, JsValue> {
    doc.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn orbit(u: &str, r: &str, excluded_primes: &str, shown: u32) -> Result<String, JsValue> {
    export(orbit_json(u, r, excluded_primes, u64::from(shown)))
}

#[wasm_bindgen]
pub fn mp_profile(u: &str, r: &str, excluded_primes: &str, prime_bound: u32) -> Result<String, JsValue> {
    export(mp_profile_json(u, r, excluded_primes, u64::from(prime_bound)))
}

#[wasm_bindgen]
pub fn trap_grid(p: u32) -> Result<String, JsValue> {
    export(trap_grid_json(u64::from(p)))
}
