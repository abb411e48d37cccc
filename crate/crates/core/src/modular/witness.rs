//! Finite witnesses for the exponential-avoidance lemma: primes `p` for
//! which `gamma * alpha^n = beta (mod p)` has no solution `n >= 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::primes::primes_up_to;
use super::residue;

/// The `m >= 0` with `base^m = target`, if any.
pub fn is_integer_power(base: &BigInt, target: &BigInt) -> Option<u32> {
    if target.is_one() {
        return Some(0);
    }
    if base.is_zero() {
        return target.is_zero().then_some(1);
    }
    if base.abs().is_one() {
        return (target == base).then_some(1);
    }
    let mut power = base.clone();
    let mut m = 1u32;
    while power.abs() <= target.abs() {
        if &power == target {
            return Some(m);
        }
        power *= base;
        m += 1;
    }
    None
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("alpha, beta and gamma must all be nonzero")]
    ZeroArgument,
    #[error("{ratio} = {alpha}^{exponent}, so the avoidance hypothesis fails")]
    PowerCondition {
        ratio: &'static str,
        alpha: BigInt,
        exponent: u32,
    },
}

fn check_hypothesis(alpha: &BigInt, beta: &BigInt, gamma: &BigInt) -> Result<(), WitnessError> {
    if alpha.is_zero() || beta.is_zero() || gamma.is_zero() {
        return Err(WitnessError::ZeroArgument);
    }
    for (ratio, num, den) in [("beta/gamma", beta, gamma), ("gamma/beta", gamma, beta)] {
        let (q, rem) = num.div_rem(den);
        if rem.is_zero() {
            if let Some(exponent) = is_integer_power(alpha, &q) {
                return Err(WitnessError::PowerCondition {
                    ratio,
                    alpha: alpha.clone(),
                    exponent,
                });
            }
        }
    }
    Ok(())
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let m = u128::from(p);
    let mut acc = 1u128 % m;
    let mut b = u128::from(base) % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// True when `beta * gamma^-1` lies outside the subgroup of `(Z/pZ)*`
/// generated by `alpha`. Requires `p` prime not dividing `alpha*beta*gamma`.
fn avoids(alpha: u64, beta: u64, gamma: u64, p: u64) -> bool {
    let target = (u128::from(beta) * u128::from(pow_mod(gamma, p - 2, p)) % u128::from(p)) as u64;
    let mut x = alpha;
    loop {
        if x == target {
            return false;
        }
        x = (u128::from(x) * u128::from(alpha) % u128::from(p)) as u64;
        if x == alpha {
            return true;
        }
    }
}

/// Primes `p <= prime_bound`, `p` not dividing `alpha*beta*gamma`, with
/// `gamma * alpha^n != beta (mod p)` for every `n >= 1`.
pub fn lemma1_witnesses(
    alpha: &BigInt,
    beta: &BigInt,
    gamma: &BigInt,
    prime_bound: u64,
) -> Result<Vec<u64>, WitnessError> {
    check_hypothesis(alpha, beta, gamma)?;
    let product = alpha * beta * gamma;
    Ok(primes_up_to(prime_bound)
        .into_iter()
        .filter(|&p| !residue(&product, p).is_zero())
        .filter(|&p| avoids(residue(alpha, p), residue(beta, p), residue(gamma, p), p))
        .collect())
}
