//! Iteration orbits of integer polynomials over `Z` and `Z/pZ`.
//!
//! The crate decides whether `u^(n)(r) = 0` for some `n` (nilpotency at
//! `r`), certifies or refutes that the orbit of `r` meets 0 modulo every
//! prime outside a finite set (weak local nilpotency), classifies the cases
//! where that question has a closed answer, and cross-checks the
//! classification by exhaustive search over small coefficient boxes.

pub mod classify;
pub mod modular;
pub mod orbit;
pub mod parse;
pub mod poly;
pub mod trap;
pub mod verify;
mod serde_big;

pub use classify::{classify, ClassifyError, Membership, Subclass, Verdict};
pub use modular::{
    certify_local, lemma1_witnesses, orbit_mod_p, primes_up_to, LocalReport, LocalStatus,
    PrimeCertificate, PrimeSet,
};
pub use orbit::{decide_nilpotency, nilpotency_index, OrbitLimits, OrbitOutcome};
pub use parse::{parse_poly, ParseError};
pub use poly::Polynomial;
