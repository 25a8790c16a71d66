//! Exact rational scalars.
//!
//! Every quantity in this crate that is not a plain integer is a
//! [`BigRational`]: an arbitrary-precision fraction kept normalized
//! (positive denominator, gcd(|numerator|, denominator) = 1) after every
//! operation. Arithmetic never rounds.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub use num_rational::BigRational;

/// Shorthand for a rational from two machine integers.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> BigRational {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer-valued rational.
pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("malformed rational `{0}`: expected `p` or `p/q` with integer p, q")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q` or a bare integer `p`. Whitespace around the number is
/// accepted; decimal notation is not.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let trimmed = s.trim();
    let (num_str, den_str) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| ParseRationalError::Malformed(s.to_string()))?;
    let den: BigInt = den_str
        .parse()
        .map_err(|_| ParseRationalError::Malformed(s.to_string()))?;
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(num, den))
}

/// True if `r` is an integer (denominator 1 after normalization).
pub fn is_integer(r: &BigRational) -> bool {
    r.is_integer()
}

/// Extracts the integer value of `r`, panicking if it is not integral.
pub fn to_integer(r: &BigRational) -> BigInt {
    assert!(r.is_integer(), "expected integral rational, got {r}");
    r.numer().clone()
}

/// Decimal digit count of `|v|`, with 0 having one digit.
pub fn decimal_digits(v: &BigInt) -> usize {
    let s = v.abs().to_string();
    s.len()
}
