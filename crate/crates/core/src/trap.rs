//! The additive trap `F(x, y) = (x^2 y, x^2 y + x y^2)` over `F_p`.
//!
//! Points with `x = 0` or `y = 0` go straight to `(0, 0)`. Otherwise the
//! ratio `y/x` grows by 1 each step, so after at most `p - 1` steps it is
//! `-1`, the second coordinate becomes 0, and one more step lands on the
//! origin.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::modular::is_prime;

pub const DEFAULT_TRAP_CAP: u64 = 101;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrapError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {p} exceeds the exhaustive cap {cap}")]
    CapExceeded { p: u64, cap: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TrapPoint {
    pub x: u64,
    pub y: u64,
    pub p: u64,
}

impl TrapPoint {
    pub fn new(x: u64, y: u64, p: u64) -> Self {
        Self { x: x % p, y: y % p, p }
    }

    pub fn is_origin(&self) -> bool {
        self.x == 0 && self.y == 0
    }
}

pub fn trap_step(pt: TrapPoint) -> TrapPoint {
    let p = u128::from(pt.p);
    let (x, y) = (u128::from(pt.x), u128::from(pt.y));
    let x2y = x * x % p * y % p;
    let xy2 = x * y % p * y % p;
    TrapPoint { x: x2y as u64, y: ((x2y + xy2) % p) as u64, p: pt.p }
}

fn check(p: u64, cap: u64) -> Result<(), TrapError> {
    if !is_prime(p) {
        return Err(TrapError::NotPrime(p));
    }
    if p > cap {
        return Err(TrapError::CapExceeded { p, cap });
    }
    Ok(())
}

/// Per-point steps to the origin over the whole plane `F_p^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrapReport {
    pub p: u64,
    /// Every point satisfies `F^(p)(pt) = (0, 0)`.
    pub nilpotent: bool,
    /// `first_zero[x * p + y]`: least `n >= 0` with `F^(n)(x, y) = (0, 0)`,
    /// or `None` if not reached within `p` steps.
    pub first_zero: Vec<Option<u32>>,
    pub max_first_zero: Option<u32>,
}

impl TrapReport {
    pub fn first_zero_at(&self, x: u64, y: u64) -> Option<u32> {
        self.first_zero[(x * self.p + y) as usize]
    }
}

fn steps_to_origin(start: TrapPoint) -> Option<u32> {
    let mut pt = start;
    for n in 0..=start.p as u32 {
        if pt.is_origin() {
            return Some(n);
        }
        pt = trap_step(pt);
    }
    None
}

pub fn trap_report(p: u64, cap: u64) -> Result<TrapReport, TrapError> {
    check(p, cap)?;
    let first_zero: Vec<Option<u32>> = (0..p * p)
        .into_par_iter()
        .map(|i| steps_to_origin(TrapPoint::new(i / p, i % p, p)))
        .collect();
    let nilpotent = first_zero.iter().all(Option::is_some);
    let max_first_zero = if nilpotent { first_zero.iter().flatten().max().copied() } else { None };
    Ok(TrapReport { p, nilpotent, first_zero, max_first_zero })
}

/// `F^(p) = (0, 0)` on all of `F_p^2`, p at most [`DEFAULT_TRAP_CAP`].
pub fn verify_trap_nilpotence(p: u64) -> Result<bool, TrapError> {
    Ok(trap_report(p, DEFAULT_TRAP_CAP)?.nilpotent)
}

pub fn trap_fixed_points(p: u64) -> Result<Vec<TrapPoint>, TrapError> {
    trap_fixed_points_with(p, DEFAULT_TRAP_CAP)
}

pub fn trap_fixed_points_with(p: u64, cap: u64) -> Result<Vec<TrapPoint>, TrapError> {
    check(p, cap)?;
    Ok((0..p)
        .flat_map(|x| (0..p).map(move |y| TrapPoint { x, y, p }))
        .filter(|&pt| trap_step(pt) == pt)
        .collect())
}
