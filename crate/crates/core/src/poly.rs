//! Dense integer polynomials with arbitrary-precision coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::parse::{parse_poly, ParseError};

/// A polynomial in `Z[x]`, stored constant term first.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and structural equality is equality of
/// polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("reduction needs a positive base point, got {0}")]
    NonPositive(BigInt),
    #[error("base point {r} does not divide the constant term {constant}")]
    NotDivisible { r: BigInt, constant: BigInt },
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// The identity map `x`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `a*x + b`.
    pub fn linear(a: BigInt, b: BigInt) -> Self {
        Self::new(vec![b, a])
    }

    /// The monic product `(x - roots[0]) * (x - roots[1]) * ...`.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots.iter().fold(Self::constant(BigInt::one()), |acc, &root| {
            &acc * &Self::from_i64s(&[-root, 1])
        })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// `(a, b)` for `u = a*x + b` of degree exactly one.
    pub fn as_linear(&self) -> Option<(BigInt, BigInt)> {
        (self.degree() == Some(1)).then(|| (self.coeffs[1].clone(), self.coeffs[0].clone()))
    }

    pub fn abs_coeff_sum(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Returns `self ∘ inner`, i.e. `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Polynomial::constant(c.clone());
        }
        acc
    }

    /// `v(x) = -u(-x)`. Satisfies `v^(n)(-r) = -u^(n)(r)`.
    pub fn negate_conjugate(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 0 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `v(x) = u(r*x) / r` for `r >= 1` dividing `u(0)`.
    ///
    /// Satisfies `r * v^(n)(1) = u^(n)(r)`.
    pub fn reduce_at(&self, r: &BigInt) -> Result<Polynomial, ReductionError> {
        if !r.is_positive() {
            return Err(ReductionError::NonPositive(r.clone()));
        }
        let constant = self.constant_term();
        let (q0, rem) = constant.div_rem(r);
        if !rem.is_zero() {
            return Err(ReductionError::NotDivisible { r: r.clone(), constant });
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(q0);
        let mut power = BigInt::one();
        for c in self.coeffs.iter().skip(1) {
            coeffs.push(c * &power);
            power *= r;
        }
        Ok(Polynomial::new(coeffs))
    }

    /// Division by a monic divisor. Returns `None` when the divisor is zero
    /// or not monic, since the quotient would leave `Z[x]`.
    pub fn div_rem_monic(&self, divisor: &Polynomial) -> Option<(Polynomial, Polynomial)> {
        let d = divisor.degree()?;
        if !divisor.coeffs[d].is_one() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Some((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let q = rem[i + d].clone();
            if q.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        rem.truncate(d);
        Some((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// True when the monic `divisor` divides `self` exactly in `Z[x]`.
    pub fn divisible_by_monic(&self, divisor: &Polynomial) -> bool {
        self.div_rem_monic(divisor)
            .is_some_and(|(_, rem)| rem.is_zero())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            if power == 0 || !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            match power {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{power}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Polynomial", 2)?;
        st.serialize_field("text", &self.to_string())?;
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}
