//! Reduction mod `p`: prime generation, orbit certificates and the
//! exponential-avoidance witness search.

mod certify;
mod primes;
mod witness;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

pub use certify::{
    certify_all, certify_local, orbit_mod_p, CertificateKind, LocalReport, LocalStatus, ModPoly,
    PrimeCertificate,
};
pub use primes::{factorize, is_prime, prime_support, primes_up_to, PrimeSet, PrimeSetError};
pub use witness::{is_integer_power, lemma1_witnesses, WitnessError};

/// `v mod p` in `0..p`.
pub(crate) fn residue(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue is below the modulus")
}
