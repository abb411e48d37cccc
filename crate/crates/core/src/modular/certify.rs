use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::primes::{primes_up_to, PrimeSet};
use super::residue;
use crate::poly::Polynomial;

/// `u` with coefficients reduced mod `p`, evaluated in `u128`.
#[derive(Debug, Clone)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(u: &Polynomial, p: u64) -> Self {
        Self {
            p,
            coeffs: u.coeffs().iter().map(|c| residue(c, p)).collect(),
        }
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = u128::from(self.p);
        let x = u128::from(x);
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * x + u128::from(c)) % p) as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateKind {
    /// `m_p`: least `m >= 1` with `u^(m)(r) = 0 mod p`.
    Hit { m_p: u64 },
    /// The orbit enters `cycle` after `tail` entries (counting `r mod p`)
    /// and never meets 0.
    Refuted { tail: u64, cycle: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeCertificate {
    pub p: u64,
    #[serde(flatten)]
    pub kind: CertificateKind,
}

impl PrimeCertificate {
    pub fn m_p(&self) -> Option<u64> {
        match self.kind {
            CertificateKind::Hit { m_p } => Some(m_p),
            CertificateKind::Refuted { .. } => None,
        }
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self.kind, CertificateKind::Refuted { .. })
    }
}

/// Iterate `x -> u(x) mod p` from `r mod p`. At most `p` steps are needed:
/// there are only `p` residues, so either 0 appears or a residue repeats.
pub fn orbit_mod_p(u: &Polynomial, r: &BigInt, p: u64) -> PrimeCertificate {
    assert!(p >= 2, "modulus must be prime");
    let f = ModPoly::new(u, p);
    let start = residue(r, p);
    if p <= 1 << 22 {
        let mut first_seen = vec![u32::MAX; p as usize];
        walk(&f, start, |x, step| {
            let slot = &mut first_seen[x as usize];
            if *slot == u32::MAX {
                *slot = step as u32;
                None
            } else {
                Some(u64::from(*slot))
            }
        })
    } else {
        let mut first_seen: HashMap<u64, u64> = HashMap::new();
        walk(&f, start, |x, step| match first_seen.get(&x) {
            Some(&s) => Some(s),
            None => {
                first_seen.insert(x, step);
                None
            }
        })
    }
}

/// `visit(x, step)` records `x` at `step` or returns the step it was first seen.
fn walk(f: &ModPoly, start: u64, mut visit: impl FnMut(u64, u64) -> Option<u64>) -> PrimeCertificate {
    let p = f.p;
    let mut history = vec![start];
    visit(start, 0);
    let mut x = start;
    for step in 1..=p {
        x = f.eval(x);
        if x == 0 {
            return PrimeCertificate { p, kind: CertificateKind::Hit { m_p: step } };
        }
        if let Some(first) = visit(x, step) {
            return PrimeCertificate {
                p,
                kind: CertificateKind::Refuted {
                    tail: first,
                    cycle: history.split_off(first as usize),
                },
            };
        }
        history.push(x);
    }
    unreachable!("orbit mod {p} must hit 0 or repeat within {p} steps")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalStatus {
    RefutedAt { p: u64 },
    ConsistentUpTo { bound: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalReport {
    pub status: LocalStatus,
    pub certificates: Vec<PrimeCertificate>,
}

impl LocalReport {
    pub fn refuting_prime(&self) -> Option<u64> {
        match self.status {
            LocalStatus::RefutedAt { p } => Some(p),
            LocalStatus::ConsistentUpTo { .. } => None,
        }
    }
}

/// Check every prime `p <= prime_bound` outside `excluded`, stopping at the
/// first refutation. A refutation proves `u` is not weakly locally nilpotent
/// at `r`; consistency is only evidence.
pub fn certify_local(u: &Polynomial, r: &BigInt, excluded: &PrimeSet, prime_bound: u64) -> LocalReport {
    let mut certificates = Vec::new();
    for p in primes_up_to(prime_bound).into_iter().filter(|&p| !excluded.contains(p)) {
        let cert = orbit_mod_p(u, r, p);
        let refuted = cert.is_refuted();
        certificates.push(cert);
        if refuted {
            return LocalReport { status: LocalStatus::RefutedAt { p }, certificates };
        }
    }
    LocalReport {
        status: LocalStatus::ConsistentUpTo { bound: prime_bound },
        certificates,
    }
}

/// Certificates for every prime `p <= prime_bound` outside `excluded`,
/// computed in parallel, in ascending order of `p`.
pub fn certify_all(u: &Polynomial, r: &BigInt, excluded: &PrimeSet, prime_bound: u64) -> Vec<PrimeCertificate> {
    primes_up_to(prime_bound)
        .into_par_iter()
        .filter(|&p| !excluded.contains(p))
        .map(|p| orbit_mod_p(u, r, p))
        .collect()
}
