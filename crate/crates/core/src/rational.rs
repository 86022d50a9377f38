//! Exact rational helpers shared by every module.
//!
//! All arithmetic in this crate is done over [`Rational`] (arbitrary precision).
//! The text form is always `p/q` with `q > 0` and `gcd(|p|, q) = 1`, including
//! integers (`-1/1`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `num / den` reduced to lowest terms. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integral(value: &Rational) -> bool {
    value.is_integer()
}

/// Display adaptor printing a rational as `p/q`.
#[derive(Debug, Clone, Copy)]
pub struct Fraction<'a>(pub &'a Rational);

impl fmt::Display for Fraction<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

pub fn to_pq(value: &Rational) -> String {
    Fraction(value).to_string()
}

/// Pretty form: integers without the `/1`.
pub fn to_pretty(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        to_pq(value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational {text:?}: {reason}")]
pub struct ParseRationalError {
    pub text: String,
    pub reason: &'static str,
}

/// Parses the canonical `p/q` form. Non-reduced input or `q <= 0` is rejected.
pub fn parse_pq(text: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        text: text.to_string(),
        reason,
    };
    let (num, den) = text.split_once('/').ok_or_else(|| err("missing '/'"))?;
    let num = BigInt::from_str(num.trim()).map_err(|_| err("bad numerator"))?;
    let den = BigInt::from_str(den.trim()).map_err(|_| err("bad denominator"))?;
    if !den.is_positive() {
        return Err(err("denominator must be positive"));
    }
    let value = Rational::new(num.clone(), den.clone());
    if value.numer() != &num || value.denom() != &den {
        return Err(err("not in lowest terms"));
    }
    Ok(value)
}

/// Serde adaptor for rationals stored as `"p/q"` strings.
pub mod serde_pq {
    use super::{parse_pq, to_pq, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_pq(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_pq(&text).map_err(D::Error::custom)
    }
}

pub(crate) fn zero() -> Rational {
    Rational::zero()
}

pub(crate) fn one() -> Rational {
    Rational::one()
}
