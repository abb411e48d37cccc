//! Exhaustive cross-checks of the classifier against orbit certificates
//! over small coefficient boxes, window explorers for `N(u)` and `LN(u)`,
//! and generators for the members of each published list.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{classify_with, support_within, ClassifyError, Verdict};
use crate::modular::{certify_local, prime_support, LocalStatus, PrimeSet};
use crate::orbit::{decide_nilpotency_with, OrbitLimits, OrbitOutcome};
use crate::poly::Polynomial;
use crate::serde_big;

pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Bound used when an enumeration candidate survives the run's own bound.
pub const TARGETED_PRIME_BOUND: u64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("search space has {cardinality} candidates, budget is {budget}")]
    BudgetExceeded { cardinality: u128, budget: u64 },
    #[error("unknown list item {0:?}")]
    UnknownTheorem(String),
    #[error("degree must be at least 1")]
    DegreeTooSmall,
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSpace {
    /// Maximum degree; every coefficient vector of length `degree + 1` is
    /// enumerated.
    pub degree: usize,
    pub coeff_bound: u32,
    #[serde(serialize_with = "serde_big::one")]
    pub r: BigInt,
    pub excluded: PrimeSet,
    pub prime_bound: u64,
}

impl SearchSpace {
    pub fn new(degree: usize, coeff_bound: u32, r: impl Into<BigInt>, excluded: PrimeSet, prime_bound: u64) -> Self {
        Self { degree, coeff_bound, r: r.into(), excluded, prime_bound }
    }

    /// Nonzero polynomials in the box: `(2C+1)^(d+1) - 1`.
    pub fn cardinality(&self) -> u128 {
        let side = 2 * u128::from(self.coeff_bound) + 1;
        u32::try_from(self.degree + 1)
            .ok()
            .and_then(|e| side.checked_pow(e))
            .unwrap_or(u128::MAX)
            - 1
    }

    /// Candidate `index` in lexicographic order of `(c_d, ..., c_0)`,
    /// counting from the all-`-C` vector. Index 0 is skipped by callers
    /// hitting the zero vector.
    fn candidate(&self, mut index: u128) -> Polynomial {
        let side = 2 * u128::from(self.coeff_bound) + 1;
        let c = i64::from(self.coeff_bound);
        let mut coeffs = vec![0i64; self.degree + 1];
        for slot in coeffs.iter_mut() {
            *slot = (index % side) as i64 - c;
            index /= side;
        }
        Polynomial::from_i64s(&coeffs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finding {
    /// The classifier claims membership but a prime refutes it.
    RefutedMember { p: u64 },
    /// Classifier and exact orbit disagree on the nilpotency index.
    IndexMismatch { classifier: Option<u64>, orbit: Option<u64> },
    /// Classified `NotInL`, yet every prime up to the targeted bound hits 0
    /// and the integer orbit does not cycle. Consistency is not proof, so
    /// this is a flag for review, not a failure.
    UnrefutedNonMember { bound: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub polynomial: Polynomial,
    pub verdict: Verdict,
    pub finding: Finding,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub candidates: u64,
    pub nilpotent: u64,
    pub strictly_local: u64,
    pub not_in: u64,
    pub undecidable: u64,
    pub refuted: u64,
    pub consistent: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub space: SearchSpace,
    pub cardinality: u64,
    pub totals: Totals,
    pub discrepancies: Vec<Discrepancy>,
    pub review_flags: Vec<Discrepancy>,
    /// Smallest prime bound at which every refuted candidate is refuted.
    pub clearing_bound: Option<u64>,
    pub per_item_citations: BTreeMap<String, u64>,
    pub wall_time_ms: u64,
}

impl SearchReport {
    /// No discrepancies and no review flags.
    pub fn confirms(&self) -> bool {
        self.discrepancies.is_empty() && self.review_flags.is_empty()
    }
}

struct Checked {
    verdict: Verdict,
    refuted_at: Option<u64>,
    problems: Vec<Finding>,
    review: Option<Finding>,
}

fn check_candidate(u: &Polynomial, space: &SearchSpace, limits: &OrbitLimits) -> Result<Checked, VerifyError> {
    let verdict = classify_with(u, &space.r, &space.excluded, limits)?;
    let outcome = decide_nilpotency_with(u, &space.r, limits).map_err(ClassifyError::from)?;
    let mut refuted_at = certify_local(u, &space.r, &space.excluded, space.prime_bound).refuting_prime();
    let mut problems = Vec::new();
    let mut review = None;

    if verdict.decidable && verdict.nilpotency_index() != outcome.index() {
        problems.push(Finding::IndexMismatch {
            classifier: verdict.nilpotency_index(),
            orbit: outcome.index(),
        });
    }
    if verdict.decidable && verdict.is_not_in() && refuted_at.is_none() {
        let cycles = matches!(outcome, OrbitOutcome::Cycle { .. });
        if space.prime_bound < TARGETED_PRIME_BOUND {
            refuted_at = certify_local(u, &space.r, &space.excluded, TARGETED_PRIME_BOUND).refuting_prime();
        }
        if !cycles && refuted_at.is_none() {
            review = Some(Finding::UnrefutedNonMember {
                bound: space.prime_bound.max(TARGETED_PRIME_BOUND),
            });
        }
    }
    if let (true, Some(p)) = (verdict.is_in(), refuted_at) {
        problems.push(Finding::RefutedMember { p });
    }
    Ok(Checked { verdict, refuted_at, problems, review })
}

pub fn verify_theorem(space: &SearchSpace) -> Result<SearchReport, VerifyError> {
    verify_theorem_with(space, DEFAULT_BUDGET, &OrbitLimits::default())
}

/// Classify every nonzero polynomial of the space and compare with its exact
/// orbit and its certificates. The merge is in enumeration order, so the
/// report does not depend on the number of workers.
pub fn verify_theorem_with(space: &SearchSpace, budget: u64, limits: &OrbitLimits) -> Result<SearchReport, VerifyError> {
    if space.degree < 1 {
        return Err(VerifyError::DegreeTooSmall);
    }
    let cardinality = space.cardinality();
    if cardinality > u128::from(budget) {
        return Err(VerifyError::BudgetExceeded { cardinality, budget });
    }
    let start = Instant::now();
    let zero_index = {
        // the all-zero vector: every digit equals C
        let side = 2 * u128::from(space.coeff_bound) + 1;
        (0..=space.degree).fold(0u128, |acc, _| acc * side + u128::from(space.coeff_bound))
    };
    let checked: Vec<(Polynomial, Checked)> = (0..=cardinality as u64)
        .into_par_iter()
        .filter(|&i| u128::from(i) != zero_index)
        .map(|i| {
            let u = space.candidate(u128::from(i));
            check_candidate(&u, space, limits).map(|c| (u, c))
        })
        .collect::<Result<_, _>>()?;

    let mut totals = Totals::default();
    let mut discrepancies = Vec::new();
    let mut review_flags = Vec::new();
    let mut per_item_citations = BTreeMap::new();
    let mut clearing_bound = None;
    for (u, c) in checked {
        totals.candidates += 1;
        let v = &c.verdict;
        if !v.decidable {
            totals.undecidable += 1;
        } else if v.nilpotency_index().is_some() {
            totals.nilpotent += 1;
        } else if v.is_strictly_local() {
            totals.strictly_local += 1;
        } else {
            totals.not_in += 1;
        }
        match c.refuted_at {
            Some(p) => {
                totals.refuted += 1;
                clearing_bound = clearing_bound.max(Some(p));
            }
            None => totals.consistent += 1,
        }
        if let Some(cite) = &v.citation {
            *per_item_citations.entry(cite.clone()).or_insert(0) += 1;
        }
        for finding in c.problems {
            discrepancies.push(Discrepancy { polynomial: u.clone(), verdict: v.clone(), finding });
        }
        if let Some(finding) = c.review {
            review_flags.push(Discrepancy { polynomial: u.clone(), verdict: v.clone(), finding });
        }
    }
    Ok(SearchReport {
        space: space.clone(),
        cardinality: cardinality as u64,
        totals,
        discrepancies,
        review_flags,
        clearing_bound,
        per_item_citations,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NStatus {
    Nilpotent { index: u64 },
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NEntry {
    pub r: i64,
    #[serde(flatten)]
    pub status: NStatus,
}

/// The `r` in `[-r_bound, r_bound]` at which `u` is nilpotent, with indices.
/// Exact inside the window; `Undecided` marks orbits that hit a resource cap.
pub fn explore_n_of_u(u: &Polynomial, r_bound: u64) -> Result<Vec<NEntry>, VerifyError> {
    explore_n_of_u_with(u, r_bound, &OrbitLimits::default())
}

pub fn explore_n_of_u_with(u: &Polynomial, r_bound: u64, limits: &OrbitLimits) -> Result<Vec<NEntry>, VerifyError> {
    let w = r_bound as i64;
    let mut out = Vec::new();
    for r in -w..=w {
        let status = match decide_nilpotency_with(u, &BigInt::from(r), limits).map_err(ClassifyError::from)? {
            OrbitOutcome::ReachedZero { index, .. } => NStatus::Nilpotent { index },
            OrbitOutcome::Exhausted { .. } => NStatus::Undecided,
            _ => continue,
        };
        out.push(NEntry { r, status });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LnStatus {
    Nilpotent { index: u64 },
    RefutedAt { p: u64 },
    /// Every prime up to `bound` hits 0. `exact` when the classifier proves
    /// membership.
    ConsistentUpTo { bound: u64, exact: bool },
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LnEntry {
    pub r: i64,
    pub status: LnStatus,
    pub citation: Option<String>,
}

/// Local nilpotency at each `r` of the window, consulting the classifier
/// first.
pub fn explore_ln_of_u(u: &Polynomial, r_bound: u64, prime_bound: u64) -> Result<Vec<LnEntry>, VerifyError> {
    let limits = OrbitLimits::default();
    let none = PrimeSet::empty();
    let w = r_bound as i64;
    let mut out = Vec::new();
    for r in -w..=w {
        let rb = BigInt::from(r);
        let verdict = classify_with(u, &rb, &none, &limits)?;
        let outcome = decide_nilpotency_with(u, &rb, &limits).map_err(ClassifyError::from)?;
        let status = match outcome {
            OrbitOutcome::ReachedZero { index, .. } => LnStatus::Nilpotent { index },
            OrbitOutcome::Exhausted { .. } => LnStatus::Undecided,
            _ => match certify_local(u, &rb, &none, prime_bound).status {
                LocalStatus::RefutedAt { p } => LnStatus::RefutedAt { p },
                LocalStatus::ConsistentUpTo { bound } => LnStatus::ConsistentUpTo {
                    bound,
                    exact: verdict.is_in(),
                },
            },
        };
        out.push(LnEntry { r, status, citation: verdict.citation });
    }
    Ok(out)
}

/// Free choices for [`generate_list_members`].
#[derive(Debug, Clone)]
pub struct ListParams {
    /// Base point for `Thm4.*` (`r >= 2`) and `Cor4.*` (`r <= -2`).
    pub r: BigInt,
    /// Primes of the products `q_1^s_1...q_k^s_k` for `Thm2.*` and `Thm3.*`
    /// (the excluded set `A`). `Thm4.*` uses `P(r)`.
    pub primes: PrimeSet,
    pub max_exponent_each: u32,
    pub max_exponent_sum: u32,
    /// Values of `p(x)` in the multiplier items.
    pub multipliers: Vec<Polynomial>,
    /// Values of the free scalars `a` (`Thm2.1`, `Thm2.5`, `Thm3.2`).
    pub scalars: Vec<i64>,
}

impl Default for ListParams {
    fn default() -> Self {
        Self {
            r: BigInt::from(6),
            primes: PrimeSet::new(vec![2, 3]).expect("primes"),
            max_exponent_each: 3,
            max_exponent_sum: 3,
            multipliers: vec![Polynomial::zero(), Polynomial::from_i64s(&[1]), Polynomial::x()],
            scalars: vec![-3, -2, -1, 1, 2, 3],
        }
    }
}

/// Positive products `q_1^s_1...q_k^s_k` within the caps, with the exponent
/// vectors, ascending by value.
fn products(primes: &[u64], each: u32, sum: u32) -> Vec<(BigInt, Vec<u32>)> {
    let mut out = vec![(BigInt::one(), vec![])];
    for &q in primes {
        let mut next = Vec::new();
        for (value, exps) in &out {
            let used: u32 = exps.iter().sum();
            let mut v = value.clone();
            for s in 0..=each.min(sum - used) {
                let mut e = exps.clone();
                e.push(s);
                next.push((v.clone(), e));
                v *= q;
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn lin(a: &BigInt, b: &BigInt) -> Polynomial {
    Polynomial::linear(a.clone(), b.clone())
}

fn signed(v: &BigInt) -> [BigInt; 2] {
    [v.clone(), -v]
}

fn theorem4_members(item: &str, r: &BigInt, params: &ListParams) -> Result<Vec<Polynomial>, VerifyError> {
    let r_factors = crate::modular::factorize(r).unwrap_or_default();
    let qs: Vec<u64> = r_factors.iter().map(|&(q, _)| q).collect();
    let prods = products(&qs, params.max_exponent_each, params.max_exponent_sum);
    let one = BigInt::one();
    let members = match item {
        "1" => prods.iter().map(|(q, _)| lin(&one, q)).collect(),
        "2" => prods
            .iter()
            .filter(|(_, s)| s.iter().zip(&r_factors).any(|(s, &(_, a))| *s > a))
            .map(|(q, _)| lin(&one, &-q))
            .collect(),
        "3" => prods
            .iter()
            .filter(|(_, s)| s.iter().sum::<u32>() >= 1)
            .flat_map(|(q, _)| signed(q).map(|a| lin(&a, r)))
            .collect(),
        "4" if r.is_even() => vec![lin(&BigInt::from(-2), &-r)],
        "4" => vec![],
        _ => return Err(VerifyError::UnknownTheorem(format!("Thm4.{item}"))),
    };
    Ok(members)
}

/// Members of the extra strictly-local family at `r >= 2`:
/// `ax + b` with `r = b(1 + ... + a^(k-1))`, `2 <= k <= 4`, `P(a) ⊆ P(b)`.
fn geometric_members(r: &BigInt, params: &ListParams) -> Vec<Polynomial> {
    let qs: Vec<u64> = prime_support(r).map(|s| s.as_slice().to_vec()).unwrap_or_default();
    let mut out = Vec::new();
    for (q, s) in products(&qs, params.max_exponent_each, params.max_exponent_sum) {
        if s.iter().sum::<u32>() == 0 {
            continue;
        }
        for a in signed(&q) {
            let mut sum = BigInt::one() + &a;
            let mut power = a.clone();
            for _k in 2..=4 {
                if !sum.is_zero() && r.is_multiple_of(&sum) {
                    let b = r / &sum;
                    if support_within(&a, &b) {
                        out.push(lin(&a, &b));
                    }
                }
                power *= &a;
                sum += &power;
            }
        }
    }
    out
}

/// Enumerate members of one list item (`"Thm1.2"`, `"Thm3.4"`, `"Cor4.1"`,
/// ...) within the bounds of `params`. `"Lemma1"` yields the family that
/// completes the `r >= 2` list.
pub fn generate_list_members(theorem_id: &str, params: &ListParams) -> Result<Vec<Polynomial>, VerifyError> {
    let unknown = || VerifyError::UnknownTheorem(theorem_id.to_owned());
    let one = BigInt::one();
    let qs = params.primes.as_slice();
    let prods = products(qs, params.max_exponent_each, params.max_exponent_sum);
    let signed_prods: Vec<BigInt> = prods.iter().flat_map(|(q, _)| signed(q)).collect();
    let scalars = params.scalars.iter().filter(|&&a| a != 0).map(|&a| BigInt::from(a));
    let nonzero_mults = params.multipliers.iter().filter(|m| !m.is_zero());
    let base_plus = |base: &[i64], roots: &[i64]| -> Vec<Polynomial> {
        let base = Polynomial::from_i64s(base);
        let prod = Polynomial::from_roots(roots);
        params.multipliers.iter().map(|m| &base + &(m * &prod)).collect()
    };

    let members = match theorem_id {
        "Thm1.1" => nonzero_mults.map(|m| m * &Polynomial::from_roots(&[1])).collect(),
        "Thm1.2" => base_plus(&[4, -2], &[1, 2]),
        "Thm1.3" => base_plus(&[-3, 7, -2], &[1, 2, 3]),
        "Thm1.4" => vec![Polynomial::from_i64s(&[1, 1])],
        "Thm2.1" => scalars.map(|a| lin(&a, &BigInt::zero())).collect(),
        "Thm2.2" => signed_prods.iter().flat_map(|b| signed(&one).map(|a| lin(&a, b))).collect(),
        "Thm2.3" => prods
            .iter()
            .filter(|(_, s)| s.iter().sum::<u32>() >= 1)
            .flat_map(|(a, _)| signed(a))
            .flat_map(|a| {
                signed_prods
                    .iter()
                    .filter(|b| support_within(&a, b))
                    .map(|b| lin(&a, b))
                    .collect::<Vec<_>>()
            })
            .collect(),
        "Thm2.4" => nonzero_mults.map(|m| m * &Polynomial::x()).collect(),
        "Thm2.5" => scalars
            .flat_map(|a| {
                // p(x) = -1 + x m(x), so p(0) = -1
                params
                    .multipliers
                    .iter()
                    .map(|m| &lin(&one, &-&a) * &(&Polynomial::from_i64s(&[-1]) + &(m * &Polynomial::x())))
                    .collect::<Vec<_>>()
            })
            .collect(),
        "Thm3.1" => signed_prods.iter().map(|b| lin(&one, b)).collect(),
        "Thm3.2" => scalars.map(|a| lin(&a, &-&a)).collect(),
        "Thm3.3" => prods
            .iter()
            .filter(|(_, s)| s.iter().sum::<u32>() >= 1)
            .flat_map(|(q, _)| signed(q).map(|a| lin(&a, &one)))
            .collect(),
        "Thm3.4" if params.primes.contains(2) => vec![Polynomial::from_i64s(&[-1, -2])],
        "Thm3.4" => vec![],
        "Thm3.5" => vec![Polynomial::from_i64s(&[4, -2])],
        "Lemma1" if params.r >= BigInt::from(2) => geometric_members(&params.r, params),
        "Lemma1" if params.r <= BigInt::from(-2) => geometric_members(&-&params.r, params)
            .iter()
            .map(Polynomial::negate_conjugate)
            .collect(),
        id => {
            if let Some(item) = id.strip_prefix("Thm4.") {
                if params.r < BigInt::from(2) {
                    return Err(unknown());
                }
                theorem4_members(item, &params.r, params)?
            } else if let Some(item) = id.strip_prefix("Cor4.") {
                if params.r > BigInt::from(-2) {
                    return Err(unknown());
                }
                theorem4_members(item, &-&params.r, params)
                    .map_err(|_| unknown())?
                    .iter()
                    .map(Polynomial::negate_conjugate)
                    .collect()
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(members.into_iter().filter(|u: &Polynomial| !u.is_zero()).collect())
}

/// Every list item accepted by [`generate_list_members`] for a given base
/// point sign.
pub const THEOREM1_ITEMS: [&str; 4] = ["Thm1.1", "Thm1.2", "Thm1.3", "Thm1.4"];
pub const THEOREM2_ITEMS: [&str; 5] = ["Thm2.1", "Thm2.2", "Thm2.3", "Thm2.4", "Thm2.5"];
pub const THEOREM3_ITEMS: [&str; 5] = ["Thm3.1", "Thm3.2", "Thm3.3", "Thm3.4", "Thm3.5"];
pub const THEOREM4_ITEMS: [&str; 4] = ["Thm4.1", "Thm4.2", "Thm4.3", "Thm4.4"];
pub const COROLLARY4_ITEMS: [&str; 4] = ["Cor4.1", "Cor4.2", "Cor4.3", "Cor4.4"];

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn strings(v: &[Polynomial]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn space_enumeration() {
        let s = SearchSpace::new(1, 1, 1, PrimeSet::empty(), 50);
        assert_eq!(s.cardinality(), 8);
        let all: Vec<String> = (0..9).map(|i| s.candidate(i).to_string()).collect();
        assert_eq!(all, ["-x-1", "-x", "-x+1", "-1", "0", "1", "x-1", "x", "x+1"]);
        assert_eq!(SearchSpace::new(3, 5, 1, PrimeSet::empty(), 200).cardinality(), 14640);
    }

    #[test]
    fn degenerate_space_is_empty() {
        let rep = verify_theorem(&SearchSpace::new(1, 0, 1, PrimeSet::empty(), 100)).unwrap();
        assert_eq!(rep.cardinality, 0);
        assert_eq!(rep.totals, Totals::default());
        assert!(rep.confirms());
    }

    #[test]
    fn budget_is_enforced() {
        let s = SearchSpace::new(3, 5, 1, PrimeSet::empty(), 50);
        assert_eq!(
            verify_theorem_with(&s, 1000, &OrbitLimits::default()),
            Err(VerifyError::BudgetExceeded { cardinality: 14640, budget: 1000 })
        );
        assert_eq!(verify_theorem(&SearchSpace::new(0, 3, 1, PrimeSet::empty(), 50)), Err(VerifyError::DegreeTooSmall));
    }

    #[test]
    fn small_runs_confirm() {
        for (r, a) in [(1, vec![]), (0, vec![]), (-1, vec![]), (1, vec![2]), (4, vec![]), (-6, vec![])] {
            let s = SearchSpace::new(2, 3, r, PrimeSet::new(a).unwrap(), 100);
            let rep = verify_theorem(&s).unwrap();
            assert!(rep.confirms(), "r={r}: {:?} {:?}", rep.discrepancies, rep.review_flags);
            assert_eq!(rep.totals.candidates, 342);
        }
    }

    #[test]
    fn n_of_u_examples() {
        let got = explore_n_of_u(&p("x-1"), 5).unwrap();
        let want: Vec<_> = (1..=5).map(|r| NEntry { r, status: NStatus::Nilpotent { index: r as u64 } }).collect();
        assert_eq!(got, want);
        let got = explore_n_of_u(&p("x+1"), 5).unwrap();
        let want: Vec<_> = (-5..=-1).map(|r| NEntry { r, status: NStatus::Nilpotent { index: (-r) as u64 } }).collect();
        assert_eq!(got, want);
        assert!(explore_n_of_u(&p("x^2+1"), 3).unwrap().is_empty());
    }

    #[test]
    fn ln_of_u_examples() {
        let got = explore_ln_of_u(&p("x-1"), 2, 100).unwrap();
        let at = |r: i64| got.iter().find(|e| e.r == r).unwrap().clone();
        assert_eq!(at(1).status, LnStatus::Nilpotent { index: 1 });
        assert_eq!(at(2).status, LnStatus::Nilpotent { index: 2 });
        assert_eq!(at(-1).status, LnStatus::ConsistentUpTo { bound: 100, exact: true });
        // 0 -> -1 -> -2 -> ... meets 0 mod p after p steps
        assert_eq!(at(0).status, LnStatus::ConsistentUpTo { bound: 100, exact: true });
        assert_eq!(at(0).citation.as_deref(), Some("Thm2.2"));
        // conjugate of x+1 at 2
        assert_eq!(at(-2).status, LnStatus::ConsistentUpTo { bound: 100, exact: true });
        assert_eq!(at(-2).citation.as_deref(), Some("Cor4.1"));

        let got = explore_ln_of_u(&p("4x-2"), 1, 100).unwrap();
        assert_eq!(got[2].status, LnStatus::RefutedAt { p: 5 });
        assert_eq!(got[1].status, LnStatus::ConsistentUpTo { bound: 100, exact: true });
    }

    #[test]
    fn generator_examples() {
        let params = ListParams::default();
        assert_eq!(strings(&generate_list_members("Thm1.2", &params).unwrap()), ["-2x+4", "x^2-5x+6", "x^3-3x^2+4"]);
        let params = ListParams { max_exponent_each: 1, ..ListParams::default() };
        let mut got = strings(&generate_list_members("Thm4.3", &params).unwrap());
        got.sort();
        let mut want = ["2x+6", "-2x+6", "3x+6", "-3x+6", "6x+6", "-6x+6"].map(String::from).to_vec();
        want.sort();
        assert_eq!(got, want);
        let two = ListParams { primes: PrimeSet::new(vec![2]).unwrap(), ..ListParams::default() };
        assert_eq!(strings(&generate_list_members("Thm3.4", &two).unwrap()), ["-2x-1"]);
        let three = ListParams { primes: PrimeSet::new(vec![3]).unwrap(), ..ListParams::default() };
        assert!(generate_list_members("Thm3.4", &three).unwrap().is_empty());
        let neg = ListParams { r: BigInt::from(-6), ..ListParams::default() };
        assert_eq!(strings(&generate_list_members("Cor4.4", &neg).unwrap()), ["-2x+6"]);
        assert!(matches!(generate_list_members("Thm9.1", &params), Err(VerifyError::UnknownTheorem(_))));
        assert!(matches!(generate_list_members("Cor4.1", &params), Err(VerifyError::UnknownTheorem(_))));
        assert!(strings(&generate_list_members("Lemma1", &params).unwrap()).contains(&"2x+2".to_string()));
    }

    #[test]
    fn generated_members_are_classified_in() {
        let mut params = ListParams::default();
        for id in THEOREM1_ITEMS {
            for u in generate_list_members(id, &params).unwrap() {
                let v = crate::classify::classify(&u, &BigInt::one(), &PrimeSet::empty()).unwrap();
                assert_eq!(v.citation.as_deref(), Some(id), "{u}");
            }
        }
        for r in [2, 6, 12, -4, -10] {
            params.r = BigInt::from(r);
            let items = if r > 0 { THEOREM4_ITEMS } else { COROLLARY4_ITEMS };
            for id in items.into_iter().chain(["Lemma1"]) {
                for u in generate_list_members(id, &params).unwrap() {
                    let v = crate::classify::classify(&u, &params.r, &PrimeSet::empty()).unwrap();
                    assert!(v.is_strictly_local(), "{id} {u} at {r}: {v:?}");
                }
            }
        }
    }

    #[test]
    fn report_is_deterministic() {
        let s = SearchSpace::new(2, 3, 1, PrimeSet::empty(), 80);
        let a = verify_theorem(&s).unwrap();
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| verify_theorem(&s).unwrap());
        let strip = |mut r: SearchReport| {
            r.wall_time_ms = 0;
            serde_json::to_string(&r).unwrap()
        };
        assert_eq!(strip(a), strip(b));
    }
}
