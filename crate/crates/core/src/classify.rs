//! Exact membership in the sets of (weakly) locally nilpotent polynomials
//! for the base points and prime sets where a complete list is known.
//!
//! Every verdict names the list item it matched (`"Thm1.2"`, `"Cor4.3"`,
//! ...) so reports can be traced back to a specific pattern. Base point
//! `-1` and negative base points `r <= -2` are reduced to `1` and `-r`
//! through `v(x) = -u(-x)`, which satisfies `v^(n)(-r) = -u^(n)(r)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::modular::PrimeSet;
use crate::orbit::{decide_nilpotency_with, OrbitError, OrbitLimits, OrbitOutcome};
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Membership {
    InL,
    NotInL,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Subclass {
    Nilpotent { index: u64 },
    /// Locally nilpotent without ever reaching 0 over `Z`.
    StrictlyLocal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub decidable: bool,
    pub result: Option<Membership>,
    pub subclass: Option<Subclass>,
    pub citation: Option<String>,
    pub note: Option<String>,
}

impl Verdict {
    fn nilpotent(index: u64, citation: &str) -> Self {
        Self {
            decidable: true,
            result: Some(Membership::InL),
            subclass: Some(Subclass::Nilpotent { index }),
            citation: Some(citation.to_owned()),
            note: None,
        }
    }

    fn strictly_local(citation: &str) -> Self {
        Self {
            decidable: true,
            result: Some(Membership::InL),
            subclass: Some(Subclass::StrictlyLocal),
            citation: Some(citation.to_owned()),
            note: None,
        }
    }

    fn not_in(citation: &str) -> Self {
        Self {
            decidable: true,
            result: Some(Membership::NotInL),
            subclass: None,
            citation: Some(citation.to_owned()),
            note: None,
        }
    }

    fn undecidable(note: &str) -> Self {
        Self {
            decidable: false,
            result: None,
            subclass: None,
            citation: None,
            note: Some(note.to_owned()),
        }
    }

    fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_owned());
        self
    }

    /// Rename the citation family, keeping the item number, e.g.
    /// `Thm4.3 -> Cor4.3`.
    fn recite(mut self, from: &str, to: &str) -> Self {
        if let Some(c) = self.citation.as_mut() {
            if let Some(item) = c.strip_prefix(from) {
                *c = format!("{to}{item}");
            }
        }
        self
    }

    pub fn is_in(&self) -> bool {
        self.result == Some(Membership::InL)
    }

    pub fn is_not_in(&self) -> bool {
        self.result == Some(Membership::NotInL)
    }

    pub fn nilpotency_index(&self) -> Option<u64> {
        match self.subclass {
            Some(Subclass::Nilpotent { index }) => Some(index),
            _ => None,
        }
    }

    pub fn is_strictly_local(&self) -> bool {
        self.subclass == Some(Subclass::StrictlyLocal)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("the zero polynomial is excluded from every list")]
    ZeroPolynomial,
    #[error("expected a linear polynomial, got degree {0:?}")]
    NotLinear(Option<usize>),
    #[error("base point {0} must satisfy |r| >= 2 here")]
    BaseTooSmall(BigInt),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

/// True when every prime factor of `n` divides `m` (`P(n) ⊆ P(m)`), by
/// stripping common factors, so neither side is ever factored.
pub fn support_within(n: &BigInt, m: &BigInt) -> bool {
    if n.is_zero() || m.is_zero() {
        return n.is_zero() && m.is_zero();
    }
    let mut rest = n.abs();
    loop {
        let g = rest.gcd(m);
        if g.is_one() {
            return rest.is_one();
        }
        rest /= g;
    }
}

fn nonzero(u: &Polynomial) -> Result<(), ClassifyError> {
    if u.is_zero() {
        Err(ClassifyError::ZeroPolynomial)
    } else {
        Ok(())
    }
}

fn linear(u: &Polynomial) -> Result<(BigInt, BigInt), ClassifyError> {
    u.as_linear().ok_or(ClassifyError::NotLinear(u.degree()))
}

/// `(u - base)` is divisible by `(x - 1)(x - 2)...(x - k)`.
fn matches_interpolation(u: &Polynomial, base: &Polynomial, k: i64) -> bool {
    let roots: Vec<i64> = (1..=k).collect();
    (u - base).divisible_by_monic(&Polynomial::from_roots(&roots))
}

/// Locally nilpotent at 1 with no excluded primes, any degree.
pub fn classify_l1(u: &Polynomial) -> Result<Verdict, ClassifyError> {
    nonzero(u)?;
    if u.divisible_by_monic(&Polynomial::from_roots(&[1])) {
        return Ok(Verdict::nilpotent(1, "Thm1.1"));
    }
    if matches_interpolation(u, &Polynomial::from_i64s(&[4, -2]), 2) {
        return Ok(Verdict::nilpotent(2, "Thm1.2"));
    }
    if matches_interpolation(u, &Polynomial::from_i64s(&[-3, 7, -2]), 3) {
        return Ok(Verdict::nilpotent(3, "Thm1.3"));
    }
    if u == &Polynomial::from_i64s(&[1, 1]) {
        return Ok(Verdict::strictly_local("Thm1.4"));
    }
    Ok(Verdict::not_in("Thm1"))
}

/// Locally nilpotent at 0 with no excluded primes, any degree.
pub fn classify_l0(u: &Polynomial) -> Result<Verdict, ClassifyError> {
    nonzero(u)?;
    let b = u.constant_term();
    if b.is_zero() {
        let v = Verdict::nilpotent(1, "Thm2.4");
        return Ok(if u.degree() == Some(1) {
            v.with_note("also listed as Thm2.1 (ax, marked non-nilpotent), but u(0) = 0 gives index 1")
        } else {
            v
        });
    }
    if let Some((a, _)) = u.as_linear() {
        if a.is_one() {
            return Ok(Verdict::strictly_local("Thm2.2"));
        }
        if a == -BigInt::one() {
            return Ok(Verdict::nilpotent(2, "Thm2.2").with_note(
                "listed as Thm2.2 (marked non-nilpotent), but -x+b sends 0 to b and b to 0; also matches Thm2.5",
            ));
        }
        if support_within(&a, &b) {
            return Ok(Verdict::strictly_local("Thm2.3"));
        }
    }
    if u.evaluate(&b).is_zero() {
        return Ok(Verdict::nilpotent(2, "Thm2.5"));
    }
    Ok(Verdict::not_in("Thm2"))
}

/// Linear `u`, weakly locally nilpotent at 1 outside `excluded`.
pub fn classify_l1a_linear(u: &Polynomial, excluded: &PrimeSet) -> Result<Verdict, ClassifyError> {
    let (a, b) = linear(u)?;
    let two = BigInt::from(2);
    if a.is_one() && excluded.supports(&b) {
        return Ok(if b == -BigInt::one() {
            Verdict::nilpotent(1, "Thm3.1")
        } else {
            Verdict::strictly_local("Thm3.1")
        });
    }
    if b == -&a {
        return Ok(Verdict::nilpotent(1, "Thm3.2"));
    }
    if b.is_one() && a.abs() >= two && excluded.supports(&a) {
        return Ok(Verdict::strictly_local("Thm3.3"));
    }
    if a == -&two && b == -BigInt::one() && excluded.contains(2) {
        return Ok(Verdict::strictly_local("Thm3.4"));
    }
    if a == -&two && b == BigInt::from(4) {
        return Ok(Verdict::nilpotent(2, "Thm3.5"));
    }
    Ok(Verdict::not_in("Thm3"))
}

/// Pattern match against the strictly-local list at `r >= 2`.
fn strictly_local_pattern(a: &BigInt, b: &BigInt, r: &BigInt) -> Option<&'static str> {
    let two = BigInt::from(2);
    if a.is_one() && b.is_positive() && support_within(b, r) {
        return Some("Thm4.1");
    }
    if a.is_one() && b.is_negative() && support_within(b, r) && !r.is_multiple_of(b) {
        return Some("Thm4.2");
    }
    if b == r && a.abs() >= two && support_within(a, r) {
        return Some("Thm4.3");
    }
    if *a == -&two && *b == -r && r.is_even() {
        return Some("Thm4.4");
    }
    None
}

/// Linear `u` at `|r| >= 2`: nilpotent, strictly local (matched against the
/// list for `r >= 2`, or its conjugate for `r <= -2`), or not locally
/// nilpotent.
pub fn classify_sr_linear(u: &Polynomial, r: &BigInt) -> Result<Verdict, ClassifyError> {
    classify_sr_linear_with(u, r, &OrbitLimits::default())
}

pub fn classify_sr_linear_with(
    u: &Polynomial,
    r: &BigInt,
    limits: &OrbitLimits,
) -> Result<Verdict, ClassifyError> {
    linear(u)?;
    if r.abs() < BigInt::from(2) {
        return Err(ClassifyError::BaseTooSmall(r.clone()));
    }
    match decide_nilpotency_with(u, r, limits)? {
        OrbitOutcome::ReachedZero { index, .. } => return Ok(Verdict::nilpotent(index, "Orbit")),
        OrbitOutcome::Exhausted { .. } => return Ok(Verdict::undecidable("orbit exhausted its resource limits")),
        _ => {}
    }
    let (family, target, r_pos) = if r.is_positive() {
        ("Thm4", u.clone(), r.clone())
    } else {
        ("Cor4", u.negate_conjugate(), -r)
    };
    let (a, b) = linear(&target)?;
    if let Some(cite) = strictly_local_pattern(&a, &b, &r_pos) {
        return Ok(Verdict::strictly_local(cite).recite("Thm4", family));
    }
    if let Some(k) = geometric_sum_exponent(&a, &b, &r_pos) {
        let note = format!(
            "outside the {family} list: r = b(1+a+...+a^{}) with P(a) in P(b), so u(r) - r = a^{k} b and Lemma1 applies at every prime",
            k - 1
        );
        return Ok(Verdict::strictly_local("Lemma1").with_note(&note));
    }
    Ok(Verdict::not_in(family))
}

/// The `k >= 1` with `r = b(1 + a + ... + a^(k-1))`, for `|a| >= 2` and
/// `P(a) ⊆ P(b)`. Then `u(r) - r = a^k b`, so `u^(n)(r) = 0 (mod p)` has a
/// solution for every `p` while `u^(n)(r) != 0` over `Z`. The published
/// list for `r >= 2` contains only the `k = 1` case and `(a, k) = (-2, 2)`.
fn geometric_sum_exponent(a: &BigInt, b: &BigInt, r: &BigInt) -> Option<u64> {
    if a.abs() < BigInt::from(2) || b.is_zero() || !support_within(a, b) {
        return None;
    }
    let mut sum = BigInt::one();
    let mut power = BigInt::one();
    let mut k = 1u64;
    // |1 + ... + a^(k-1)| >= 2^(k-2) once k >= 2
    while sum.abs() <= r.abs() || k <= 2 {
        if &(b * &sum) == r {
            return Some(k);
        }
        power *= a;
        sum += &power;
        k += 1;
    }
    None
}

/// Route `(u, r, excluded)` to the exact classifier that covers it, or
/// report that no complete list applies.
pub fn classify(u: &Polynomial, r: &BigInt, excluded: &PrimeSet) -> Result<Verdict, ClassifyError> {
    classify_with(u, r, excluded, &OrbitLimits::default())
}

pub fn classify_with(
    u: &Polynomial,
    r: &BigInt,
    excluded: &PrimeSet,
    limits: &OrbitLimits,
) -> Result<Verdict, ClassifyError> {
    nonzero(u)?;
    if u.degree() == Some(0) {
        // c != 0 is hit mod p only for the finitely many p | c.
        return Ok(Verdict::not_in("Deg0").with_note("constant maps lie outside every list"));
    }
    let one = BigInt::one();
    if excluded.is_empty() {
        if r.is_zero() {
            return classify_l0(u);
        }
        if r == &one {
            return classify_l1(u);
        }
        if r == &-&one {
            return Ok(classify_l1(&u.negate_conjugate())?.recite("Thm1", "Rem4"));
        }
        let outcome = decide_nilpotency_with(u, r, limits)?;
        return Ok(match outcome {
            OrbitOutcome::ReachedZero { index, .. } => Verdict::nilpotent(index, "Orbit"),
            OrbitOutcome::Exhausted { .. } => Verdict::undecidable("orbit exhausted its resource limits"),
            _ if u.degree() >= Some(2) => Verdict::not_in("Fact1"),
            _ => classify_sr_linear_with(u, r, limits)?,
        });
    }
    if u.degree() == Some(1) {
        if r == &one {
            return classify_l1a_linear(u, excluded);
        }
        if r == &-&one {
            return Ok(classify_l1a_linear(&u.negate_conjugate(), excluded)?
                .with_note("decided for v(x) = -u(-x) at base point 1"));
        }
    }
    if let OrbitOutcome::ReachedZero { index, .. } = decide_nilpotency_with(u, r, limits)? {
        return Ok(Verdict::nilpotent(index, "Orbit"));
    }
    Ok(Verdict::undecidable(
        "no complete list covers this base point, prime set and degree; run certify for evidence",
    ))
}
