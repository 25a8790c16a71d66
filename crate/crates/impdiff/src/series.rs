//! Truncated formal power series with exact rational coefficients.
//!
//! A [`RationalSeries`] stores the coefficients of x^0 .. x^N densely, where
//! N is the explicit truncation order. All arithmetic is exact on every
//! retained coefficient. Binary operations require equal truncation orders;
//! mixing orders is an error, never a silent truncation.

use crate::rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("constant term is zero; series is not invertible")]
    ZeroConstantTerm,
    #[error("square root requires constant term 1, got {0}")]
    ConstantTermNotOne(String),
    #[error("division by x requires zero constant term, got {0}")]
    NonzeroConstantTerm(String),
}

/// A formal power series truncated at order N: coefficient k holds [x^k].
///
/// Invariant: `coeffs.len() == truncation_order + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    /// Builds a series from its coefficients; the truncation order is
    /// `coeffs.len() - 1`. Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "series needs at least the constant term"
        );
        Self { coeffs }
    }

    /// Series of a polynomial given by machine-integer coefficients
    /// (ascending degree), truncated or zero-padded to order `order`.
    pub fn from_i64(poly: &[i64], order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| {
                poly.get(k)
                    .map(|&c| BigRational::from_integer(c.into()))
                    .unwrap_or_else(BigRational::zero)
            })
            .collect();
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_orders(&self, other: &Self) -> Result<(), SeriesError> {
        if self.truncation_order() != other.truncation_order() {
            return Err(SeriesError::OrderMismatch {
                left: self.truncation_order(),
                right: other.truncation_order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        Ok(Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        Ok(Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * factor).collect())
    }

    pub fn add_constant(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        let n = self.truncation_order();
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Ok(Self::new(coeffs))
    }

    /// Multiplicative inverse: `self.mul(&self.inv()?)` is 1 up to order N.
    /// Requires a nonzero constant term.
    ///
    /// Coefficient recurrence: c_0 = 1/a_0, c_n = -(1/a_0) sum_{k=1}^{n} a_k c_{n-k}.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let n = self.truncation_order();
        let inv_a0 = self.coeffs[0].recip();
        let mut c = vec![BigRational::zero(); n + 1];
        c[0] = inv_a0.clone();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &c[m - k];
                }
            }
            c[m] = -(&inv_a0 * acc);
        }
        Ok(Self::new(c))
    }

    /// Square root with constant term 1: `r.mul(&r)` recovers `self` up to
    /// order N. Requires constant term exactly 1.
    ///
    /// Solves (sum c_k x^k)^2 = a term by term:
    /// c_n = (a_n - sum_{i=1}^{n-1} c_i c_{n-i}) / 2.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermNotOne(self.coeffs[0].to_string()));
        }
        let n = self.truncation_order();
        let mut c = vec![BigRational::zero(); n + 1];
        c[0] = BigRational::one();
        let two = BigRational::from_integer(2.into());
        for m in 1..=n {
            let mut cross = BigRational::zero();
            for i in 1..m {
                cross += &c[i] * &c[m - i];
            }
            c[m] = (&self.coeffs[m] - cross) / &two;
        }
        Ok(Self::new(c))
    }

    /// Formal derivative; the result is known one order less.
    pub fn derivative(&self) -> Self {
        assert!(
            self.truncation_order() >= 1,
            "derivative needs truncation order >= 1"
        );
        let coeffs = (1..self.coeffs.len())
            .map(|k| &self.coeffs[k] * BigRational::from_integer(k.into()))
            .collect();
        Self::new(coeffs)
    }

    /// Division by x as an index shift; the constant term must be zero and
    /// the result is known one order less.
    pub fn div_x(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm(self.coeffs[0].to_string()));
        }
        assert!(
            self.truncation_order() >= 1,
            "division by x needs truncation order >= 1"
        );
        Ok(Self::new(self.coeffs[1..].to_vec()))
    }

    /// Drops coefficients above `order` (which must not exceed the current
    /// truncation order).
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.truncation_order());
        Self::new(self.coeffs[..=order].to_vec())
    }
}
