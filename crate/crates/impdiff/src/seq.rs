//! The term-count sequence a_n by its formula-based characterizations, plus
//! the supporting special functions: Catalan numbers, Pochhammer symbols,
//! terminating Gauss hypergeometric sums, and the binomial transform.
//!
//! No characterization is privileged: each producer builds the sequence on
//! its own, and the equality harness ([`AllMethods`]) fails loudly if any
//! two disagree.

use crate::rational::{int, rat, BigRational};
use crate::series::RationalSeries;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("series does not terminate: neither upper parameter is a nonpositive integer")]
    NonTerminating,
    #[error("lower parameter {0} is a nonpositive integer hit before termination")]
    LowerParameterPole(String),
    #[error("termination length {found} exceeds the bound {bound}")]
    TerminationBoundExceeded { found: usize, bound: usize },
}

/// An integer sequence indexed from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSequence {
    values: Vec<BigInt>,
}

impl IntegerSequence {
    pub fn new(values: Vec<BigInt>) -> Self {
        Self { values }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl std::ops::Index<usize> for IntegerSequence {
    type Output = BigInt;
    fn index(&self, n: usize) -> &BigInt {
        &self.values[n]
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// The n-th Catalan number C_n = (1/(n+1)) C(2n, n).
pub fn catalan(n: usize) -> BigInt {
    let (q, r) = binomial(2 * n, n).div_rem(&BigInt::from(n + 1));
    assert!(r.is_zero(), "C(2n, n) is always divisible by n + 1");
    q
}

/// a_0..a_n via the quadratic recurrence
/// a_n = 1 + 2 sum_{m=1}^{n-1} a_m a_{n-m}, with a_0 = a_1 = 1.
pub fn a_quadratic(n_max: usize) -> IntegerSequence {
    let mut a: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n <= 1 {
            a.push(BigInt::one());
            continue;
        }
        let mut acc = BigInt::one();
        for m in 1..n {
            acc += 2 * (&a[m] * &a[n - m]);
        }
        a.push(acc);
    }
    IntegerSequence::new(a)
}

/// a_0..a_n via the linear recurrence
/// n a_n = (-14 + 10n) a_{n-1} + (18 - 9n) a_{n-2}, with a_0 = a_1 = 1.
///
/// The division by n must be exact at every step; a remainder would mean an
/// implementation bug, so it panics rather than returning an error.
pub fn a_linear(n_max: usize) -> IntegerSequence {
    let mut a: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n <= 1 {
            a.push(BigInt::one());
            continue;
        }
        let n_i = BigInt::from(n);
        let num: BigInt = (10 * &n_i - 14) * &a[n - 1] + (BigInt::from(18) - 9 * &n_i) * &a[n - 2];
        let (q, r) = num.div_rem(&n_i);
        assert!(
            r.is_zero(),
            "linear recurrence step not integral at n = {n}"
        );
        a.push(q);
    }
    IntegerSequence::new(a)
}

/// The generating function 5/4 - (1/4) sqrt((1-9x)/(1-x)) truncated at
/// `order`, built from exact series arithmetic.
pub fn a_generating_series(order: usize) -> RationalSeries {
    let numer = RationalSeries::from_i64(&[1, -9], order);
    let denom = RationalSeries::from_i64(&[1, -1], order);
    let inner = numer
        .mul(&denom.inv().expect("1 - x has nonzero constant term"))
        .expect("equal orders");
    let root = inner.sqrt().expect("constant term is 1");
    root.scale(&rat(-1, 4)).add_constant(&rat(5, 4))
}

/// a_0..a_n as the coefficients of the generating function; every
/// coefficient must come out integral.
pub fn a_gf(n_max: usize) -> IntegerSequence {
    let g = a_generating_series(n_max);
    let values = g
        .coeffs()
        .iter()
        .map(|c| {
            assert!(
                c.is_integer(),
                "generating function coefficient {c} not integral"
            );
            c.numer().clone()
        })
        .collect();
    IntegerSequence::new(values)
}

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
pub fn pochhammer(a: &BigRational, n: usize) -> BigRational {
    let mut acc = BigRational::one();
    for k in 0..n {
        acc *= a + int(k as i64);
    }
    acc
}

/// Exact value of the terminating Gauss hypergeometric sum
/// 2F1(a, b; c; z) = sum_k (a)_k (b)_k / (c)_k * z^k / k!.
///
/// At least one upper parameter must be a nonpositive integer; the sum then
/// has 1 + min|upper| terms. `bound` caps the accepted termination length.
/// A lower parameter that is a nonpositive integer reached before
/// termination is a pole and is refused.
pub fn hyp2f1_exact(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    z: &BigRational,
    bound: usize,
) -> Result<BigRational, SeqError> {
    let termination = |p: &BigRational| -> Option<usize> {
        if p.is_integer() && !p.is_positive() {
            (-p.numer()).to_usize()
        } else {
            None
        }
    };
    let k_max = match (termination(a), termination(b)) {
        (Some(i), Some(j)) => i.min(j),
        (Some(i), None) => i,
        (None, Some(j)) => j,
        (None, None) => return Err(SeqError::NonTerminating),
    };
    if k_max > bound {
        return Err(SeqError::TerminationBoundExceeded {
            found: k_max,
            bound,
        });
    }
    if let Some(pole) = termination(c) {
        if pole < k_max {
            return Err(SeqError::LowerParameterPole(c.to_string()));
        }
    }
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for k in 0..=k_max {
        sum += &term;
        if k == k_max {
            break;
        }
        let k_rat = int(k as i64);
        let denom = (c + &k_rat) * int(k as i64 + 1);
        term = term * (a + &k_rat) * (b + &k_rat) * z / denom;
    }
    Ok(sum)
}

/// Terminating 2F1 with the standard parameter shape used by the a_n
/// identity: the second upper parameter is the nonpositive integer
/// `b_nonpositive` (for a_n it is 1 - n).
pub fn hyp2f1_terminating(
    a: &BigRational,
    b_nonpositive: i64,
    c: &BigRational,
    z: &BigRational,
) -> Result<BigRational, SeqError> {
    assert!(b_nonpositive <= 0, "terminating parameter must be <= 0");
    hyp2f1_exact(a, &int(b_nonpositive), c, z, usize::MAX)
}

/// a_0..a_n via a_n = 2F1(1/2, 1-n; 2; -8); a_0 uses the convention
/// a_0 = 1 (the identity itself is stated for n >= 1, where 1 - n <= 0).
pub fn a_hypergeometric(n_max: usize) -> IntegerSequence {
    let a = rat(1, 2);
    let c = int(2);
    let z = int(-8);
    let values = (0..=n_max)
        .map(|n| {
            if n == 0 {
                return BigInt::one();
            }
            let v = hyp2f1_terminating(&a, 1 - n as i64, &c, &z)
                .expect("1 - n <= 0 terminates the sum");
            assert!(v.is_integer(), "2F1 value {v} not integral at n = {n}");
            v.numer().clone()
        })
        .collect();
    IntegerSequence::new(values)
}

/// Left-hand side of Gauss' contiguous relation
/// (c-b) F(a,b-1;c;z) + (2b-c+(a-b)z) F(a,b;c;z) + b(z-1) F(a,b+1;c;z),
/// which is identically zero. Every series with a nonzero scalar
/// coefficient must terminate within `bound` terms; a series multiplied by
/// an exactly zero coefficient is skipped without evaluation.
pub fn gauss_contiguous_residual(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    z: &BigRational,
    bound: usize,
) -> Result<BigRational, SeqError> {
    let one = BigRational::one();
    let parts = [
        (c - b, b - &one),
        (int(2) * b - c + (a - b) * z, b.clone()),
        (b * (z - &one), b + &one),
    ];
    let mut acc = BigRational::zero();
    for (coefficient, b_shifted) in parts {
        if coefficient.is_zero() {
            continue;
        }
        acc += coefficient * hyp2f1_exact(a, &b_shifted, c, z, bound)?;
    }
    Ok(acc)
}

/// Binomial transform b_n = sum_{k=0}^{n} C(n, k) s_k.
pub fn binomial_transform(s: &IntegerSequence) -> IntegerSequence {
    let values = (0..s.len())
        .map(|n| (0..=n).map(|k| binomial(n, k) * &s[k]).sum())
        .collect();
    IntegerSequence::new(values)
}

/// Inverse transform s_n = sum_{k=0}^{n} (-1)^(n-k) C(n, k) b_k.
pub fn inverse_binomial_transform(b: &IntegerSequence) -> IntegerSequence {
    let values = (0..b.len())
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let term = binomial(n, k) * &b[k];
                    if (n - k) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect();
    IntegerSequence::new(values)
}

/// a_0..a_n via the binomial transform of {2^k C_k}: a_0 = 1 and
/// a_{n+1} = sum_k C(n, k) 2^k C_k.
pub fn a_binomial_transform(n_max: usize) -> IntegerSequence {
    let mut values = vec![BigInt::one()];
    if n_max >= 1 {
        let doubled_catalan = IntegerSequence::new((0..n_max).map(|k| catalan(k) << k).collect());
        let transformed = binomial_transform(&doubled_catalan);
        values.extend(transformed.values().iter().cloned());
    }
    IntegerSequence::new(values)
}

/// Checks that the series expansion of (1 - sqrt(1-4x)) / (2x) reproduces
/// the Catalan numbers through index `n_max`. The division by x is an index
/// shift, applied after asserting the constant term is zero.
pub fn catalan_gf_check(n_max: usize) -> bool {
    let order = n_max + 1;
    let root = match RationalSeries::from_i64(&[1, -4], order).sqrt() {
        Ok(r) => r,
        Err(_) => return false,
    };
    let numerator = RationalSeries::one(order).sub(&root).expect("equal orders");
    let shifted = match numerator.div_x() {
        Ok(s) => s,
        Err(_) => return false,
    };
    let series = shifted.scale(&rat(1, 2));
    (0..=n_max).all(|k| series.coeff(k) == &BigRational::from_integer(catalan(k)))
}

/// All five formula-based sequence producers side by side.
#[derive(Debug, Clone)]
pub struct AllMethods {
    pub quadratic: IntegerSequence,
    pub linear: IntegerSequence,
    pub generating_function: IntegerSequence,
    pub hypergeometric: IntegerSequence,
    pub binomial: IntegerSequence,
}

impl AllMethods {
    pub fn compute(n_max: usize) -> Self {
        Self {
            quadratic: a_quadratic(n_max),
            linear: a_linear(n_max),
            generating_function: a_gf(n_max),
            hypergeometric: a_hypergeometric(n_max),
            binomial: a_binomial_transform(n_max),
        }
    }

    /// True iff all five sequences agree elementwise.
    pub fn agree(&self) -> bool {
        let head = self.quadratic.values();
        [
            &self.linear,
            &self.generating_function,
            &self.hypergeometric,
            &self.binomial,
        ]
        .iter()
        .all(|s| s.values() == head)
    }
}

/// Table of the first twelve values, used by tests and the CLI.
pub const A_TABLE: [i64; 12] = [
    1, 1, 3, 13, 71, 441, 2955, 20805, 151695, 1135345, 8671763, 67320573,
];
