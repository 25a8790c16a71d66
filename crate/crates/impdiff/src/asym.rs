//! Asymptotic growth of the term-count sequence and its relative error
//! against the exact values.
//!
//! The leading-order estimate is C(n) * 9^n with
//! C(n) = 3 / (16 sqrt(2 pi)) * n^(-3/2). Exact a_n come from the linear
//! recurrence; only sqrt(2 pi n^3) is approximated, as a rational accurate
//! to the requested number of decimal digits, so the relative error
//! 1 - C(n) 9^n / a_n is an exact rational built on one controlled
//! approximation.

use crate::decimal::{digit_count, format_decimal, pi_approx, sqrt_approx};
use crate::rational::BigRational;
use crate::seq::a_linear;
use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AsymError {
    #[error("the estimate needs n >= 1, got {0}")]
    OrderTooSmall(usize),
    #[error("the table needs n_max >= 2, got {0}")]
    TableTooSmall(usize),
    #[error("precision must be at least 10 digits, got {0}")]
    PrecisionTooSmall(usize),
    #[error("stride must be positive")]
    ZeroStride,
}

const ESTIMATE_GUARD_DIGITS: usize = 10;

/// The leading-term estimate (3 / (16 sqrt(2 pi))) n^(-3/2) 9^n, accurate
/// to `precision_digits` significant decimal digits.
pub fn asymptotic_estimate(n: usize, precision_digits: usize) -> Result<BigRational, AsymError> {
    if n < 1 {
        return Err(AsymError::OrderTooSmall(n));
    }
    if precision_digits < 10 {
        return Err(AsymError::PrecisionTooSmall(precision_digits));
    }
    let work = precision_digits + ESTIMATE_GUARD_DIGITS;
    // 3 * 9^n / (16 sqrt(2 pi n^3))
    let two_pi_n3 = pi_approx(work) * BigRational::from_integer(BigInt::from(n).pow(3) * 2);
    let root = sqrt_approx(&two_pi_n3, work);
    let nine_pow = BigRational::from_integer(BigInt::from(9u32).pow(n as u32));
    Ok(BigRational::from_integer(3.into()) * nine_pow
        / (BigRational::from_integer(16.into()) * root))
}

/// One table row: the index, the decimal length of the exact a_n, and the
/// relative error 1 - C(n) 9^n / a_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymRow {
    pub n: usize,
    pub a_n_digits: usize,
    pub rel_err: BigRational,
}

/// Relative-error table over 2..=n_max, rows strictly increasing in n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticReport {
    pub rows: Vec<AsymRow>,
}

impl AsymptoticReport {
    /// CSV rendering: header `n,rel_err`, one row per entry, the error
    /// printed with the given number of significant digits.
    pub fn to_csv(&self, significant_digits: usize) -> String {
        let mut out = String::from("n,rel_err\n");
        for row in &self.rows {
            out.push_str(&row.n.to_string());
            out.push(',');
            out.push_str(&format_decimal(&row.rel_err, significant_digits));
            out.push('\n');
        }
        out
    }
}

/// Builds the relative-error table from exact a_n (linear recurrence) and
/// the asymptotic estimate at the given precision.
///
/// `stride = None` uses the plotting default: every n up to 100, every
/// tenth n beyond.
pub fn relative_error_table(
    n_max: usize,
    stride: Option<usize>,
    precision_digits: usize,
) -> Result<AsymptoticReport, AsymError> {
    if n_max < 2 {
        return Err(AsymError::TableTooSmall(n_max));
    }
    if precision_digits < 10 {
        return Err(AsymError::PrecisionTooSmall(precision_digits));
    }
    if stride == Some(0) {
        return Err(AsymError::ZeroStride);
    }
    let exact = a_linear(n_max);
    let mut rows = Vec::new();
    let mut n = 2;
    while n <= n_max {
        let a_n = &exact[n];
        let estimate = asymptotic_estimate(n, precision_digits)?;
        let rel_err = BigRational::one() - estimate / BigRational::from_integer(a_n.clone());
        rows.push(AsymRow {
            n,
            a_n_digits: digit_count(a_n),
            rel_err,
        });
        n += match stride {
            Some(s) => s,
            None if n < 100 => 1,
            None => 10,
        };
    }
    Ok(AsymptoticReport { rows })
}
