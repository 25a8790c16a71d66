//! Divided differences of an implicitly defined function, by three routes:
//!
//! - `dd_direct`: sample y and take the ordinary divided difference
//!   (the oracle);
//! - `dd_recurrence`: the recurrence that expresses [x_i,...,x_j]y through
//!   lower-order divided differences of y on consecutive windows and
//!   bivariate divided differences of g;
//! - `dd_explicit`: the closed formula summing over all dissections of the
//!   polygon on 0..n, one product of g-ratios per face.
//!
//! All three agree exactly, which the tests check as rational equality.
//!
//! Exact mode restricts g to relations linear in y, g(x, y) = A(x) y + B(x)
//! with rational-coefficient polynomial ratios A and B, so that
//! y(x) = -B(x)/A(x) is exactly rational and no tolerance enters anywhere.
//! The bivariate divided differences of g use the y-samples indexed
//! identically to the x-samples: the grid behind [i_0...i_s; j_0...j_t]g is
//! {x_{i_0},...} x {y_{j_0},...}.

use crate::dissection::{
    enumerate_dissections, for_each_dissection, Dissection, DissectionError, Face,
};
use crate::rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ImplicitError {
    #[error("abscissas must be pairwise distinct")]
    DuplicateAbscissa,
    #[error("ordinates collide: y = {y} at x = {x1} and x = {x2}")]
    DuplicateOrdinate { x1: String, x2: String, y: String },
    #[error("implicit-function condition fails: A({x}) = 0")]
    ImplicitFunctionCondition { x: String },
    #[error("denominator polynomial vanishes at x = {x}")]
    DenominatorVanishes { x: String },
    #[error("expected exactly {expected} sample points, got {got}")]
    WrongPointCount { expected: usize, got: usize },
    #[error("needs at least {needed} sample points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("a denominator divided difference of g vanishes")]
    VanishingDenominator,
    #[error("recurrence evaluation is limited to order {MAX_RECURRENCE_ORDER}, got {0}")]
    OrderTooLarge(usize),
    #[error("polynomial {0} must not be identically zero")]
    ZeroPolynomial(&'static str),
    #[error(transparent)]
    Dissection(#[from] DissectionError),
    #[error("malformed relation file: {0}")]
    MalformedRelation(String),
}

/// Dense polynomial with rational coefficients, ascending degree order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn constant_one() -> Self {
        Self::new(vec![BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// Exactly evaluable relation g(x, y) = A(x) y + B(x), with
/// A = a_num/a_den and B = b_num/b_den.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicitRelation {
    a_num: Polynomial,
    a_den: Polynomial,
    b_num: Polynomial,
    b_den: Polynomial,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffSpec {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
struct RelationSpec {
    a_num: Vec<CoeffSpec>,
    a_den: Vec<CoeffSpec>,
    b_num: Vec<CoeffSpec>,
    b_den: Vec<CoeffSpec>,
}

fn parse_coeffs(specs: Vec<CoeffSpec>) -> Result<Polynomial, ImplicitError> {
    let coeffs = specs
        .into_iter()
        .map(|c| match c {
            CoeffSpec::Int(v) => Ok(BigRational::from_integer(v.into())),
            CoeffSpec::Text(s) => crate::rational::parse_rational(&s)
                .map_err(|e| ImplicitError::MalformedRelation(e.to_string())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::new(coeffs))
}

impl ImplicitRelation {
    pub fn new(
        a_num: Polynomial,
        a_den: Polynomial,
        b_num: Polynomial,
        b_den: Polynomial,
    ) -> Result<Self, ImplicitError> {
        if a_num.is_zero() {
            return Err(ImplicitError::ZeroPolynomial("a_num"));
        }
        if a_den.is_zero() {
            return Err(ImplicitError::ZeroPolynomial("a_den"));
        }
        if b_den.is_zero() {
            return Err(ImplicitError::ZeroPolynomial("b_den"));
        }
        Ok(Self {
            a_num,
            a_den,
            b_num,
            b_den,
        })
    }

    /// Relation with polynomial A and B given by integer coefficients.
    pub fn from_i64_polys(a: &[i64], b: &[i64]) -> Result<Self, ImplicitError> {
        Self::new(
            Polynomial::from_i64(a),
            Polynomial::constant_one(),
            Polynomial::from_i64(b),
            Polynomial::constant_one(),
        )
    }

    /// Parses the JSON relation format: four coefficient arrays in
    /// ascending degree order, entries either integers or "p/q" strings.
    pub fn from_json(text: &str) -> Result<Self, ImplicitError> {
        let spec: RelationSpec = serde_json::from_str(text)
            .map_err(|e| ImplicitError::MalformedRelation(e.to_string()))?;
        Self::new(
            parse_coeffs(spec.a_num)?,
            parse_coeffs(spec.a_den)?,
            parse_coeffs(spec.b_num)?,
            parse_coeffs(spec.b_den)?,
        )
    }

    /// A(x), refusing x where the denominator vanishes.
    pub fn a_at(&self, x: &BigRational) -> Result<BigRational, ImplicitError> {
        let den = self.a_den.eval(x);
        if den.is_zero() {
            return Err(ImplicitError::DenominatorVanishes { x: x.to_string() });
        }
        Ok(self.a_num.eval(x) / den)
    }

    /// B(x), refusing x where the denominator vanishes.
    pub fn b_at(&self, x: &BigRational) -> Result<BigRational, ImplicitError> {
        let den = self.b_den.eval(x);
        if den.is_zero() {
            return Err(ImplicitError::DenominatorVanishes { x: x.to_string() });
        }
        Ok(self.b_num.eval(x) / den)
    }

    /// g(x, y) = A(x) y + B(x).
    pub fn g_at(&self, x: &BigRational, y: &BigRational) -> Result<BigRational, ImplicitError> {
        Ok(self.a_at(x)? * y + self.b_at(x)?)
    }

    /// The implicit solution y(x) = -B(x)/A(x); requires A(x) != 0.
    pub fn solve_y(&self, x: &BigRational) -> Result<BigRational, ImplicitError> {
        let a = self.a_at(x)?;
        if a.is_zero() {
            return Err(ImplicitError::ImplicitFunctionCondition { x: x.to_string() });
        }
        Ok(-self.b_at(x)? / a)
    }
}

/// A relation together with sample abscissas x_0..x_n and the solved
/// ordinates y_i = y(x_i). Construction guarantees the xs and ys are each
/// pairwise distinct and that g(x_i, y_i) = 0 exactly.
#[derive(Debug, Clone)]
pub struct ImplicitProblem {
    relation: ImplicitRelation,
    xs: Vec<BigRational>,
    ys: Vec<BigRational>,
}

impl ImplicitProblem {
    pub fn new(relation: ImplicitRelation, xs: Vec<BigRational>) -> Result<Self, ImplicitError> {
        if xs.is_empty() {
            return Err(ImplicitError::TooFewPoints { needed: 1, got: 0 });
        }
        for (i, a) in xs.iter().enumerate() {
            if xs[i + 1..].contains(a) {
                return Err(ImplicitError::DuplicateAbscissa);
            }
        }
        let ys = xs
            .iter()
            .map(|x| relation.solve_y(x))
            .collect::<Result<Vec<_>, _>>()?;
        for (i, y) in ys.iter().enumerate() {
            if let Some(j) = ys[i + 1..].iter().position(|other| other == y) {
                return Err(ImplicitError::DuplicateOrdinate {
                    x1: xs[i].to_string(),
                    x2: xs[i + 1 + j].to_string(),
                    y: y.to_string(),
                });
            }
        }
        debug_assert!(xs
            .iter()
            .zip(&ys)
            .all(|(x, y)| relation.g_at(x, y).unwrap().is_zero()));
        Ok(Self { relation, xs, ys })
    }

    pub fn relation(&self) -> &ImplicitRelation {
        &self.relation
    }

    pub fn xs(&self) -> &[BigRational] {
        &self.xs
    }

    pub fn ys(&self) -> &[BigRational] {
        &self.ys
    }

    /// Divided-difference order n: number of points minus 1.
    pub fn order(&self) -> usize {
        self.xs.len() - 1
    }
}

/// Memoized bivariate divided differences of g over the problem grid
/// {x_0,...,x_n} x {y_0,...,y_n}, keyed on the exact index lists. The
/// dissection sum asks for the same sub-differences many times over.
struct BivariateCache {
    xs: Vec<BigRational>,
    ys: Vec<BigRational>,
    values: Vec<Vec<BigRational>>,
    memo: HashMap<(Vec<usize>, Vec<usize>), BigRational>,
}

impl BivariateCache {
    fn new(problem: &ImplicitProblem) -> Result<Self, ImplicitError> {
        let relation = problem.relation();
        let a_vals = problem
            .xs()
            .iter()
            .map(|x| relation.a_at(x))
            .collect::<Result<Vec<_>, _>>()?;
        let b_vals = problem
            .xs()
            .iter()
            .map(|x| relation.b_at(x))
            .collect::<Result<Vec<_>, _>>()?;
        let values = a_vals
            .iter()
            .zip(&b_vals)
            .map(|(a, b)| problem.ys().iter().map(|y| a * y + b).collect())
            .collect();
        Ok(Self {
            xs: problem.xs().to_vec(),
            ys: problem.ys().to_vec(),
            values,
            memo: HashMap::new(),
        })
    }

    /// [x_{i_0},...,x_{i_s}; y_{j_0},...,y_{j_t}]g for strictly increasing
    /// index lists, by the reduction recurrence with memoization.
    fn dd(&mut self, x_idx: &[usize], y_idx: &[usize]) -> BigRational {
        debug_assert!(x_idx.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(y_idx.windows(2).all(|w| w[0] < w[1]));
        let key = (x_idx.to_vec(), y_idx.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let value = if x_idx.len() > 1 {
            let hi = self.dd(&x_idx[1..], y_idx);
            let lo = self.dd(&x_idx[..x_idx.len() - 1], y_idx);
            (hi - lo) / (&self.xs[x_idx[x_idx.len() - 1]] - &self.xs[x_idx[0]])
        } else if y_idx.len() > 1 {
            let hi = self.dd(x_idx, &y_idx[1..]);
            let lo = self.dd(x_idx, &y_idx[..y_idx.len() - 1]);
            (hi - lo) / (&self.ys[y_idx[y_idx.len() - 1]] - &self.ys[y_idx[0]])
        } else {
            self.values[x_idx[0]][y_idx[0]].clone()
        };
        self.memo.insert(key, value.clone());
        value
    }

    /// -[i(i+1); (i+1)]g / [i; i(i+1)]g: the first-order divided difference
    /// of y over the consecutive pair (i, i+1).
    fn first_order_pair(&mut self, i: usize) -> Result<BigRational, ImplicitError> {
        let num = self.dd(&[i, i + 1], &[i + 1]);
        let den = self.dd(&[i], &[i, i + 1]);
        if den.is_zero() {
            return Err(ImplicitError::VanishingDenominator);
        }
        Ok(-num / den)
    }
}

/// Oracle route: the ordinary divided difference of the sampled ordinates.
pub fn dd_direct(problem: &ImplicitProblem) -> BigRational {
    let n = problem.order() + 1;
    let mut cur = problem.ys().to_vec();
    let xs = problem.xs();
    for w in 1..n {
        for i in 0..n - w {
            let num = &cur[i + 1] - &cur[i];
            let den = &xs[i + w] - &xs[i];
            cur[i] = num / den;
        }
        cur.truncate(n - w);
    }
    cur.swap_remove(0)
}

/// First-order formula [01]y = -[01;1]g / [0;01]g; the problem must have
/// exactly two points.
pub fn dd_first_order(problem: &ImplicitProblem) -> Result<BigRational, ImplicitError> {
    if problem.order() != 1 {
        return Err(ImplicitError::WrongPointCount {
            expected: 2,
            got: problem.order() + 1,
        });
    }
    BivariateCache::new(problem)?.first_order_pair(0)
}

/// All [x_i,...,x_j]y over consecutive windows, filled by increasing width.
/// Width-1 windows come from the first-order formula; wider windows from
/// the recurrence, whose products only ever reference consecutive windows.
fn consecutive_window_dds(
    cache: &mut BivariateCache,
    n: usize,
) -> Result<HashMap<(usize, usize), BigRational>, ImplicitError> {
    let mut windows: HashMap<(usize, usize), BigRational> = HashMap::new();
    for i in 0..n {
        let v = cache.first_order_pair(i)?;
        windows.insert((i, i + 1), v);
    }
    for width in 2..=n {
        for start in 0..=n - width {
            let end = start + width;
            let v = window_recurrence(cache, &windows, start, end)?;
            windows.insert((start, end), v);
        }
    }
    Ok(windows)
}

/// One window [x_i,...,x_j]y by the recurrence: sum over interior index
/// choices i = i_0 < ... < i_k = j (k >= 2) and admissible offsets s (the
/// first s steps are unit steps) of
/// [i...i+s; i_s...i_k]g / [i; ij]g times the product of window divided
/// differences of y over the remaining steps, all negated.
fn window_recurrence(
    cache: &mut BivariateCache,
    windows: &HashMap<(usize, usize), BigRational>,
    start: usize,
    end: usize,
) -> Result<BigRational, ImplicitError> {
    let width = end - start;
    let den = cache.dd(&[start], &[start, end]);
    if den.is_zero() {
        return Err(ImplicitError::VanishingDenominator);
    }
    let interior_len = width - 1;
    let mut seq: Vec<usize> = Vec::with_capacity(width + 1);
    let mut sum = BigRational::zero();
    for mask in 1u64..(1 << interior_len) {
        seq.clear();
        seq.push(start);
        for bit in 0..interior_len {
            if mask & (1 << bit) != 0 {
                seq.push(start + 1 + bit);
            }
        }
        seq.push(end);
        let k = seq.len() - 1;
        let mut unit_run = 0;
        while unit_run < k && seq[unit_run + 1] == seq[unit_run] + 1 {
            unit_run += 1;
        }
        for s in 0..=unit_run {
            let x_part: Vec<usize> = (start..=start + s).collect();
            let num = cache.dd(&x_part, &seq[s..]);
            if num.is_zero() {
                continue;
            }
            let mut term = num;
            for l in s + 1..=k {
                term *= &windows[&(seq[l - 1], seq[l])];
            }
            sum += term;
        }
    }
    Ok(-(sum / den))
}

/// The recurrence walks 2^(width-1) interior masks per window; beyond this
/// order it would never finish, so refuse instead of overflowing the mask.
pub const MAX_RECURRENCE_ORDER: usize = 32;

/// Recurrence route for [x_0,...,x_n]y; n = 1 delegates to the first-order
/// formula.
pub fn dd_recurrence(problem: &ImplicitProblem) -> Result<BigRational, ImplicitError> {
    let n = problem.order();
    if n < 1 {
        return Err(ImplicitError::TooFewPoints {
            needed: 2,
            got: n + 1,
        });
    }
    if n > MAX_RECURRENCE_ORDER {
        return Err(ImplicitError::OrderTooLarge(n));
    }
    if n == 1 {
        return dd_first_order(problem);
    }
    let mut cache = BivariateCache::new(problem)?;
    let windows = consecutive_window_dds(&mut cache, n)?;
    Ok(windows[&(0, n)].clone())
}

/// One term of the per-face sum: offset `s` must be admissible for the face
/// (the face's first s steps are unit steps).
fn face_term(
    cache: &mut BivariateCache,
    face: &Face,
    s: usize,
) -> Result<BigRational, ImplicitError> {
    let v = face.vertices();
    let k = v.len() - 1;
    debug_assert!(s <= face.initial_unit_run());
    debug_assert_eq!(v[s], v[0] + s);
    let den = cache.dd(&[v[0]], &[v[0], v[k]]);
    if den.is_zero() {
        return Err(ImplicitError::VanishingDenominator);
    }
    let x_part: Vec<usize> = (v[0]..=v[0] + s).collect();
    let num = cache.dd(&x_part, &v[s..]);
    let mut term = -(num / den);
    for l in s + 1..=k {
        if v[l] - v[l - 1] == 1 {
            term *= cache.first_order_pair(v[l - 1])?;
        }
    }
    Ok(term)
}

/// Sum of a face's terms over all admissible offsets.
fn face_sum(cache: &mut BivariateCache, face: &Face) -> Result<BigRational, ImplicitError> {
    let mut acc = BigRational::zero();
    for s in 0..=face.initial_unit_run() {
        acc += face_term(cache, face, s)?;
    }
    Ok(acc)
}

/// Explicit route: sum over every dissection of the polygon on 0..n of the
/// product over its faces of the per-face offset sums. Needs n >= 2.
pub fn dd_explicit(problem: &ImplicitProblem) -> Result<BigRational, ImplicitError> {
    let n = problem.order();
    if n < 2 {
        return Err(ImplicitError::TooFewPoints {
            needed: 3,
            got: n + 1,
        });
    }
    let mut cache = BivariateCache::new(problem)?;
    let mut total = BigRational::zero();
    let mut failure: Option<ImplicitError> = None;
    for_each_dissection(n, |faces| {
        if failure.is_some() {
            return;
        }
        let mut product = BigRational::one();
        for face in faces {
            match face_sum(&mut cache, face) {
                Ok(v) => product *= v,
                Err(e) => {
                    failure = Some(e);
                    return;
                }
            }
        }
        total += product;
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// One term of the explicit formula: a dissection plus the chosen offset
/// for each of its faces (parallel to `dissection.faces()`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDescriptor {
    pub dissection: Dissection,
    pub offsets: Vec<usize>,
}

/// Every term of the explicit formula for order n, in canonical dissection
/// order with offsets in odometer order. The list length is the term count
/// a_n.
pub fn term_list(n: usize) -> Result<Vec<TermDescriptor>, ImplicitError> {
    if n < 2 {
        return Err(ImplicitError::TooFewPoints {
            needed: 3,
            got: n + 1,
        });
    }
    let mut out = Vec::new();
    for dissection in enumerate_dissections(n)? {
        let limits: Vec<usize> = dissection
            .faces()
            .iter()
            .map(|f| f.initial_unit_run() + 1)
            .collect();
        let mut offsets = vec![0usize; limits.len()];
        loop {
            out.push(TermDescriptor {
                dissection: dissection.clone(),
                offsets: offsets.clone(),
            });
            // odometer increment, least-significant face first
            let mut pos = 0;
            loop {
                if pos == offsets.len() {
                    break;
                }
                offsets[pos] += 1;
                if offsets[pos] < limits[pos] {
                    break;
                }
                offsets[pos] = 0;
                pos += 1;
            }
            if pos == offsets.len() {
                break;
            }
        }
    }
    Ok(out)
}

/// Evaluates terms of the explicit formula against one problem, sharing the
/// memoized bivariate divided differences across calls.
pub struct TermEvaluator {
    cache: BivariateCache,
}

impl TermEvaluator {
    pub fn new(problem: &ImplicitProblem) -> Result<Self, ImplicitError> {
        Ok(Self {
            cache: BivariateCache::new(problem)?,
        })
    }

    /// Exact value of a single term of the explicit formula.
    pub fn evaluate(&mut self, term: &TermDescriptor) -> Result<BigRational, ImplicitError> {
        let mut product = BigRational::one();
        for (face, &s) in term.dissection.faces().iter().zip(&term.offsets) {
            product *= face_term(&mut self.cache, face, s)?;
        }
        Ok(product)
    }
}

/// One-shot convenience around [`TermEvaluator`].
pub fn evaluate_term(
    problem: &ImplicitProblem,
    term: &TermDescriptor,
) -> Result<BigRational, ImplicitError> {
    TermEvaluator::new(problem)?.evaluate(term)
}
