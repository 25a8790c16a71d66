//! High-precision decimal helpers on top of big integers.
//!
//! Irrational quantities (pi, square roots) are approximated as rationals
//! with denominator 10^digits; everything downstream then runs in exact
//! rational arithmetic on the approximation, so precision control sits in
//! exactly one place. Machine floats never appear: 9^1000 alone overflows
//! them.

use crate::rational::BigRational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

fn pow10(digits: usize) -> BigInt {
    BigInt::from(10u32).pow(digits as u32)
}

/// floor(arctan(1/m) * 10^scale), by the alternating series
/// sum_j (-1)^j / ((2j+1) m^(2j+1)). Truncated integer divisions are each
/// off by at most one, so callers add guard digits.
fn atan_inv_scaled(m: u64, scale: usize) -> BigInt {
    let msq = BigInt::from(m) * BigInt::from(m);
    let mut power = pow10(scale) / BigInt::from(m);
    let mut acc = BigInt::zero();
    let mut j = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * j + 1);
        if j.is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
        power /= &msq;
        j += 1;
    }
    acc
}

const GUARD_DIGITS: usize = 15;

/// pi to `digits` decimal digits as a rational with denominator 10^digits,
/// via the Machin formula pi = 16 arctan(1/5) - 4 arctan(1/239).
pub fn pi_approx(digits: usize) -> BigRational {
    let work = digits + GUARD_DIGITS;
    let scaled =
        BigInt::from(16) * atan_inv_scaled(5, work) - BigInt::from(4) * atan_inv_scaled(239, work);
    BigRational::new(scaled / pow10(GUARD_DIGITS), pow10(digits))
}

/// Nonnegative square root of `x` as a rational accurate to within
/// 10^(-digits), via the integer square root of the scaled numerator.
pub fn sqrt_approx(x: &BigRational, digits: usize) -> BigRational {
    assert!(!x.is_negative(), "square root of negative rational");
    let scale = pow10(digits);
    // sqrt(p/q) = sqrt(p*q)/q, so isqrt(p*q*10^(2d)) / (q*10^d) is within
    // one scaled unit of the target.
    let scaled = (x.numer() * x.denom() * &scale * &scale).sqrt();
    BigRational::new(scaled, x.denom() * scale)
}

/// Renders `x` as a decimal string with the given number of significant
/// digits (round half away from zero). Plain notation is used for moderate
/// magnitudes, otherwise scientific `dEe` notation.
pub fn format_decimal(x: &BigRational, significant_digits: usize) -> String {
    assert!(significant_digits >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.is_negative();
    let abs = x.abs();

    // Find e with 10^e <= abs < 10^(e+1).
    let num_digits = abs.numer().to_string().len() as i64;
    let den_digits = abs.denom().to_string().len() as i64;
    let mut exponent = num_digits - den_digits;
    let ten = BigInt::from(10u32);
    let pow_of = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(ten.pow(e as u32))
        } else {
            BigRational::new(BigInt::from(1), ten.pow((-e) as u32))
        }
    };
    if abs < pow_of(exponent) {
        exponent -= 1;
    } else if abs >= pow_of(exponent + 1) {
        exponent += 1;
    }

    // Mantissa scaled to `significant_digits` integer digits, rounded half
    // away from zero.
    let shift = significant_digits as i64 - 1 - exponent;
    let scaled = &abs * pow_of(shift);
    let (mut mantissa, rem) = scaled.numer().div_rem(scaled.denom());
    if &rem * 2 >= *scaled.denom() {
        mantissa += 1;
    }
    let mut digits = mantissa.to_string();
    // Rounding can carry into one more digit (e.g. 999.5 -> 1000).
    if digits.len() > significant_digits {
        digits.truncate(significant_digits);
        exponent += 1;
    }

    let sign = if negative { "-" } else { "" };
    if (-6..=20).contains(&exponent) {
        let point = exponent + 1;
        let body = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), digits)
        } else if (point as usize) >= digits.len() {
            format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
        } else {
            format!(
                "{}.{}",
                &digits[..point as usize],
                &digits[point as usize..]
            )
        };
        format!("{sign}{body}")
    } else {
        let head = &digits[..1];
        let tail = &digits[1..];
        if tail.is_empty() {
            format!("{sign}{head}e{exponent}")
        } else {
            format!("{sign}{head}.{tail}e{exponent}")
        }
    }
}

/// Decimal digit count of an integer, ignoring its sign.
pub fn digit_count(v: &BigInt) -> usize {
    v.abs().to_string().len()
}
