//! Exact integer orbits `r, u(r), u(u(r)), ...` and the nilpotency decision.
//!
//! Nilpotency at `r` is decided by a three-way search over the orbit: it
//! reaches 0, it revisits a value (and so cycles forever without 0), or its
//! absolute value passes an [`EscapeBound`], after which it grows strictly
//! and never returns to 0. For `degree >= 2` or a linear slope of absolute
//! value at least 2 every orbit ends in one of the three, so only resource
//! caps can leave the question open. Translations `x + b` are decided in
//! closed form.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::Polynomial;
use crate::serde_big;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrbitLimits {
    pub max_steps: u64,
    /// Bit length past which an iterate counts as diverging beyond budget.
    pub max_bits: u64,
    /// Seen-value memory for cycle detection.
    pub max_seen: usize,
}

impl Default for OrbitLimits {
    fn default() -> Self {
        Self {
            max_steps: 1_000_000,
            max_bits: 1_000_000,
            max_seen: 100_000,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("the zero polynomial has no nilpotency index")]
    ZeroPolynomial,
    #[error("iterate {step} has {bits} bits, over the configured limit")]
    ValueTooLarge { step: u64, bits: u64 },
    #[error("linear iteration needs a nonzero slope")]
    ZeroSlope,
    #[error("no escape bound for polynomials of degree <= 1 with slope in {{-1, 0, 1}}")]
    NoEscapeBound,
    #[error("orbit undecided within resource limits")]
    Undecided,
}

/// A threshold `B` with `|u(x)| > |x|` whenever `|x| >= B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EscapeBound(#[serde(serialize_with = "serde_big::one")] pub BigInt);

impl EscapeBound {
    pub fn value(&self) -> &BigInt {
        &self.0
    }

    fn holds_at(&self, x: &BigInt) -> bool {
        x.abs() >= self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EscapeCertificate {
    /// `|value| >= bound` for an [`EscapeBound`].
    AbsoluteBound,
    /// `u = x + b` and `value` has the sign of `b`: the orbit moves away
    /// from 0 by `|b|` per step.
    Translation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExhaustReason {
    StepCap,
    BitCap,
    SeenCap,
    IndexOverflow,
}

/// `tail_length` counts the orbit entries `r, u(r), ...` that precede the
/// first element of `cycle_values`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitOutcome {
    ReachedZero {
        index: u64,
        steps_used: u64,
    },
    Cycle {
        tail_length: u64,
        #[serde(serialize_with = "serde_big::many")]
        cycle_values: Vec<BigInt>,
        steps_used: u64,
    },
    Escaped {
        step: u64,
        #[serde(serialize_with = "serde_big::one")]
        value: BigInt,
        #[serde(serialize_with = "serde_big::one")]
        bound: BigInt,
        certificate: EscapeCertificate,
        steps_used: u64,
    },
    Exhausted {
        reason: ExhaustReason,
        steps_used: u64,
    },
}

impl OrbitOutcome {
    pub fn index(&self) -> Option<u64> {
        match self {
            OrbitOutcome::ReachedZero { index, .. } => Some(*index),
            _ => None,
        }
    }

    pub fn steps_used(&self) -> u64 {
        match self {
            OrbitOutcome::ReachedZero { steps_used, .. }
            | OrbitOutcome::Cycle { steps_used, .. }
            | OrbitOutcome::Escaped { steps_used, .. }
            | OrbitOutcome::Exhausted { steps_used, .. } => *steps_used,
        }
    }

    /// True when the outcome proves 0 is never reached.
    pub fn is_never_zero(&self) -> bool {
        matches!(self, OrbitOutcome::Cycle { .. } | OrbitOutcome::Escaped { .. })
    }
}

/// `u^(n)(r)` by `n` successive evaluations.
pub fn iterate_value(
    u: &Polynomial,
    r: &BigInt,
    n: u64,
    limits: &OrbitLimits,
) -> Result<BigInt, OrbitError> {
    let mut x = r.clone();
    for step in 1..=n {
        x = u.evaluate(&x);
        let bits = x.bits();
        if bits > limits.max_bits {
            return Err(OrbitError::ValueTooLarge { step, bits });
        }
    }
    Ok(x)
}

/// The first `n` iterates `u(r), ..., u^(n)(r)`, stopping early at the bit cap.
pub fn orbit_prefix(u: &Polynomial, r: &BigInt, n: u64, limits: &OrbitLimits) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut x = r.clone();
    for _ in 0..n {
        x = u.evaluate(&x);
        if x.bits() > limits.max_bits {
            break;
        }
        out.push(x.clone());
    }
    out
}

/// Closed form for `u = a*x + b`: `a^n r + b (1 + a + ... + a^(n-1))`.
pub fn iterate_linear_closed(a: &BigInt, b: &BigInt, r: &BigInt, n: u64) -> Result<BigInt, OrbitError> {
    if a.is_zero() {
        return Err(OrbitError::ZeroSlope);
    }
    let an: BigInt = Pow::pow(a, n);
    let geometric = if a.is_one() {
        BigInt::from(n)
    } else {
        (&an - 1) / (a - 1)
    };
    Ok(an * r + b * geometric)
}

/// `B = 2 (1 + sum |a_i|)`.
pub fn escape_bound(u: &Polynomial) -> Result<EscapeBound, OrbitError> {
    match u.degree() {
        Some(d) if d >= 2 => {}
        Some(1) if u.coeff(1).abs() >= BigInt::from(2) => {}
        _ => return Err(OrbitError::NoEscapeBound),
    }
    Ok(EscapeBound((u.abs_coeff_sum() + 1) * 2))
}

pub fn decide_nilpotency(u: &Polynomial, r: &BigInt) -> Result<OrbitOutcome, OrbitError> {
    decide_nilpotency_with(u, r, &OrbitLimits::default())
}

pub fn decide_nilpotency_with(
    u: &Polynomial,
    r: &BigInt,
    limits: &OrbitLimits,
) -> Result<OrbitOutcome, OrbitError> {
    if u.is_zero() {
        return Err(OrbitError::ZeroPolynomial);
    }
    if let Some((a, b)) = u.as_linear() {
        if a.is_one() && !b.is_zero() {
            return Ok(translation_outcome(&b, r));
        }
    }
    let bound = escape_bound(u).ok();

    let mut seen: HashMap<BigInt, u64> = HashMap::new();
    let mut history = vec![r.clone()];
    seen.insert(r.clone(), 0);
    let mut x = r.clone();
    for step in 1..=limits.max_steps {
        x = u.evaluate(&x);
        if x.is_zero() {
            return Ok(OrbitOutcome::ReachedZero { index: step, steps_used: step });
        }
        if let Some(bound) = bound.as_ref().filter(|b| b.holds_at(&x)) {
            return Ok(OrbitOutcome::Escaped {
                step,
                value: x,
                bound: bound.0.clone(),
                certificate: EscapeCertificate::AbsoluteBound,
                steps_used: step,
            });
        }
        if let Some(&first) = seen.get(&x) {
            return Ok(OrbitOutcome::Cycle {
                tail_length: first,
                cycle_values: history.split_off(first as usize),
                steps_used: step,
            });
        }
        if x.bits() > limits.max_bits {
            return Ok(OrbitOutcome::Exhausted { reason: ExhaustReason::BitCap, steps_used: step });
        }
        if seen.len() >= limits.max_seen {
            return Ok(OrbitOutcome::Exhausted { reason: ExhaustReason::SeenCap, steps_used: step });
        }
        seen.insert(x.clone(), step);
        history.push(x.clone());
    }
    Ok(OrbitOutcome::Exhausted {
        reason: ExhaustReason::StepCap,
        steps_used: limits.max_steps,
    })
}

/// `u = x + b`, `b != 0`: the orbit is `r + n b`.
fn translation_outcome(b: &BigInt, r: &BigInt) -> OrbitOutcome {
    let escaped = |step: u64, value: BigInt| OrbitOutcome::Escaped {
        step,
        value,
        bound: BigInt::one(),
        certificate: EscapeCertificate::Translation,
        steps_used: 0,
    };
    if r.is_zero() || r.signum() == b.signum() {
        return escaped(1, r + b);
    }
    let (q, rem) = r.abs().div_rem(&b.abs());
    if rem.is_zero() {
        return match u64::try_from(&q) {
            Ok(index) => OrbitOutcome::ReachedZero { index, steps_used: 0 },
            Err(_) => OrbitOutcome::Exhausted { reason: ExhaustReason::IndexOverflow, steps_used: 0 },
        };
    }
    let n = q + 1;
    let value = r + &n * b;
    match u64::try_from(&n) {
        Ok(step) => escaped(step, value),
        Err(_) => OrbitOutcome::Exhausted { reason: ExhaustReason::IndexOverflow, steps_used: 0 },
    }
}

pub fn nilpotency_index(u: &Polynomial, r: &BigInt) -> Result<Option<u64>, OrbitError> {
    nilpotency_index_with(u, r, &OrbitLimits::default())
}

pub fn nilpotency_index_with(
    u: &Polynomial,
    r: &BigInt,
    limits: &OrbitLimits,
) -> Result<Option<u64>, OrbitError> {
    match decide_nilpotency_with(u, r, limits)? {
        OrbitOutcome::ReachedZero { index, .. } => Ok(Some(index)),
        OrbitOutcome::Exhausted { .. } => Err(OrbitError::Undecided),
        _ => Ok(None),
    }
}
