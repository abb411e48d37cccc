use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

/// All primes `<= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = usize::try_from(bound).expect("sieve bound fits in memory");
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrimeSetError {
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// A finite, sorted set of distinct primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct PrimeSet(Vec<u64>);

impl PrimeSet {
    pub fn new(mut primes: Vec<u64>) -> Result<Self, PrimeSetError> {
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(PrimeSetError::NotPrime(bad));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(Self(primes))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        let mut v: Vec<u64> = self.0.iter().chain(&other.0).copied().collect();
        v.sort_unstable();
        v.dedup();
        PrimeSet(v)
    }

    /// True when every prime factor of `n` lies in this set. `n = 0` is
    /// divisible by every prime, so it never qualifies.
    pub fn supports(&self, n: &BigInt) -> bool {
        if n.is_zero() {
            return false;
        }
        let mut rest = n.abs();
        for p in self.iter() {
            let p = BigInt::from(p);
            loop {
                let (q, r) = rest.div_rem(&p);
                if !r.is_zero() {
                    break;
                }
                rest = q;
            }
        }
        rest.is_one()
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Prime factorization of `|n|` by trial division, as `(prime, exponent)`
/// pairs. `None` for `n = 0` and for `|n|` beyond `u64`.
pub fn factorize(n: &BigInt) -> Option<Vec<(u64, u32)>> {
    let mut m = n.abs().to_u64().filter(|&m| m != 0)?;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    Some(out)
}

/// `P(n)`: the primes dividing `n`.
pub fn prime_support(n: &BigInt) -> Option<PrimeSet> {
    factorize(n).map(|f| PrimeSet(f.into_iter().map(|(p, _)| p).collect()))
}
