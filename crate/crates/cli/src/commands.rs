use std::collections::BTreeSet;

use locnil::classify::classify_with;
use locnil::modular::{certify_all, certify_local, lemma1_witnesses, LocalReport, LocalStatus};
use locnil::orbit::{decide_nilpotency_with, orbit_prefix, OrbitLimits, OrbitOutcome};
use locnil::trap::{trap_fixed_points_with, trap_report, TrapError};
use locnil::verify::{explore_ln_of_u, explore_n_of_u_with, verify_theorem_with, LnStatus, NStatus, SearchSpace, VerifyError};
use serde_json::{json, Value};

use crate::args::{Command, ExploreKind, Limits};

/// Exit codes: 0 computed, 1 usage error, 2 refutation found, 3 budget
/// exhausted or undecided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Computed = 0,
    Refuted = 2,
    Undecided = 3,
}

pub enum Failure {
    Usage(String),
    /// A resource cap stopped the run; reported with exit code 3.
    Budget { inputs: Value, message: String },
}

pub struct Outcome {
    pub inputs: Value,
    pub result: Value,
    pub citations: Vec<String>,
    pub status: Status,
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn run(command: &Command, limits: &Limits) -> Result<Outcome, Failure> {
    let orbit_limits = OrbitLimits {
        max_steps: limits.step_cap,
        max_bits: limits.bit_cap,
        ..OrbitLimits::default()
    };
    let usage = |e: &dyn std::fmt::Display| Failure::Usage(e.to_string());
    match command {
        Command::Orbit { target, show } => {
            let inputs = json!({ "u": target.u.to_string(), "r": target.r.to_string(), "step_cap": limits.step_cap });
            let outcome = decide_nilpotency_with(&target.u, &target.r, &orbit_limits).map_err(|e| usage(&e))?;
            let shown = (*show).min(outcome.steps_used().max(1));
            let prefix = orbit_prefix(&target.u, &target.r, shown, &orbit_limits);
            let status = match outcome {
                OrbitOutcome::Exhausted { .. } => Status::Undecided,
                _ => Status::Computed,
            };
            Ok(Outcome {
                inputs,
                result: json!({ "outcome": to_value(&outcome), "prefix": strings(&prefix) }),
                citations: vec![],
                status,
            })
        }
        Command::Classify { target, excluded } => {
            let a = excluded.set().map_err(Failure::Usage)?;
            let inputs = json!({ "u": target.u.to_string(), "r": target.r.to_string(), "A": to_value(&a) });
            let verdict = classify_with(&target.u, &target.r, &a, &orbit_limits).map_err(|e| usage(&e))?;
            let status = if verdict.decidable { Status::Computed } else { Status::Undecided };
            Ok(Outcome {
                inputs,
                citations: verdict.citation.iter().cloned().collect(),
                result: to_value(&verdict),
                status,
            })
        }
        Command::Certify { target, excluded, all } => {
            let a = excluded.set().map_err(Failure::Usage)?;
            let bound = limits.prime_bound;
            let inputs = json!({
                "u": target.u.to_string(), "r": target.r.to_string(), "A": to_value(&a),
                "prime_bound": bound, "all": all,
            });
            if target.u.is_zero() {
                return Err(Failure::Usage("the zero polynomial has no orbit to certify".into()));
            }
            let report = if *all {
                let certificates = certify_all(&target.u, &target.r, &a, bound);
                let status = match certificates.iter().find(|c| c.is_refuted()) {
                    Some(c) => LocalStatus::RefutedAt { p: c.p },
                    None => LocalStatus::ConsistentUpTo { bound },
                };
                LocalReport { status, certificates }
            } else {
                certify_local(&target.u, &target.r, &a, bound)
            };
            let status = if report.refuting_prime().is_some() { Status::Refuted } else { Status::Computed };
            Ok(Outcome { inputs, result: to_value(&report), citations: vec![], status })
        }
        Command::VerifyTheorem { degree, coeff_bound, r, excluded } => {
            let a = excluded.set().map_err(Failure::Usage)?;
            let space = SearchSpace::new(*degree, *coeff_bound, r.clone(), a, limits.prime_bound);
            let inputs = json!({ "space": to_value(&space), "cardinality": space.cardinality().to_string(), "budget": limits.budget });
            let report = match verify_theorem_with(&space, limits.budget, &orbit_limits) {
                Ok(report) => report,
                Err(e @ VerifyError::BudgetExceeded { .. }) => {
                    return Err(Failure::Budget { inputs, message: e.to_string() });
                }
                Err(e) => return Err(usage(&e)),
            };
            let mut result = to_value(&report);
            // timings live outside the result so reruns compare equal
            result.as_object_mut().expect("object").remove("wall_time_ms");
            let status = if report.discrepancies.is_empty() { Status::Computed } else { Status::Refuted };
            Ok(Outcome {
                inputs,
                citations: report.per_item_citations.keys().cloned().collect(),
                result,
                status,
            })
        }
        Command::Explore { u, r_bound, kind } => {
            let inputs = json!({
                "u": u.to_string(), "r_bound": r_bound,
                "kind": match kind { ExploreKind::N => "n", ExploreKind::Ln => "ln" },
                "prime_bound": limits.prime_bound,
            });
            if u.is_zero() {
                return Err(Failure::Usage("the zero polynomial has no orbit to explore".into()));
            }
            match kind {
                ExploreKind::N => {
                    let entries = explore_n_of_u_with(u, *r_bound, &orbit_limits).map_err(|e| usage(&e))?;
                    let undecided = entries.iter().any(|e| e.status == NStatus::Undecided);
                    Ok(Outcome {
                        inputs,
                        result: json!({ "entries": to_value(&entries) }),
                        citations: vec![],
                        status: if undecided { Status::Undecided } else { Status::Computed },
                    })
                }
                ExploreKind::Ln => {
                    let entries = explore_ln_of_u(u, *r_bound, limits.prime_bound).map_err(|e| usage(&e))?;
                    let undecided = entries.iter().any(|e| e.status == LnStatus::Undecided);
                    let citations: BTreeSet<String> = entries.iter().filter_map(|e| e.citation.clone()).collect();
                    Ok(Outcome {
                        inputs,
                        result: json!({ "entries": to_value(&entries) }),
                        citations: citations.into_iter().collect(),
                        status: if undecided { Status::Undecided } else { Status::Computed },
                    })
                }
            }
        }
        Command::Trap { p, points } => {
            let inputs = json!({ "p": p, "cap": limits.trap_cap });
            let trap_failure = |e: TrapError| match e {
                TrapError::NotPrime(_) => Failure::Usage(e.to_string()),
                TrapError::CapExceeded { .. } => Failure::Budget { inputs: inputs.clone(), message: e.to_string() },
            };
            let report = trap_report(*p, limits.trap_cap).map_err(trap_failure)?;
            let fixed = trap_fixed_points_with(*p, limits.trap_cap).map_err(trap_failure)?;
            let mut result = json!({
                "p": p,
                "points": p * p,
                "nilpotent": report.nilpotent,
                "max_first_zero": report.max_first_zero,
                "fixed_points": to_value(&fixed),
            });
            if *points {
                result["first_zero"] = to_value(&report.first_zero);
            }
            Ok(Outcome { inputs, result, citations: vec![], status: Status::Computed })
        }
        Command::Lemma1 { alpha, beta, gamma } => {
            let inputs = json!({
                "alpha": alpha.to_string(), "beta": beta.to_string(), "gamma": gamma.to_string(),
                "prime_bound": limits.prime_bound,
            });
            let witnesses = lemma1_witnesses(alpha, beta, gamma, limits.prime_bound).map_err(|e| usage(&e))?;
            Ok(Outcome {
                inputs,
                result: json!({ "count": witnesses.len(), "witnesses": witnesses }),
                citations: vec![],
                status: Status::Computed,
            })
        }
        Command::Reduce { target } => {
            let inputs = json!({ "u": target.u.to_string(), "r": target.r.to_string() });
            let v = target.u.reduce_at(&target.r).map_err(|e| usage(&e))?;
            Ok(Outcome { inputs, result: json!({ "v": to_value(&v) }), citations: vec![], status: Status::Computed })
        }
    }
}
