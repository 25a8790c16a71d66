//! Exact divided differences of implicitly defined functions, and the
//! combinatorics of the formula that expresses them.
//!
//! A relation g(x, y) = 0 that is linear in y defines y(x) exactly over the
//! rationals, so the divided differences [x_0,...,x_n]y can be computed
//! three independent ways and compared with no tolerance:
//!
//! - directly from the sampled ordinates ([`implicit::dd_direct`]);
//! - by a recurrence through bivariate divided differences of g
//!   ([`implicit::dd_recurrence`]);
//! - by the explicit sum over all dissections of a convex polygon
//!   ([`implicit::dd_explicit`]).
//!
//! The number of terms in the explicit sum is the sequence
//! a_n = 1, 1, 3, 13, 71, 441, ... (OEIS A162326), which this crate
//! produces by direct enumeration over dissections ([`terms`]) and by five
//! formula-based characterizations ([`seq`]): a quadratic recurrence, a
//! linear recurrence, a generating function, a terminating hypergeometric
//! sum, and a binomial transform. [`asym`] compares the exact values
//! against the leading-order growth C(n) 9^n.

pub mod asym;
pub mod cli;
pub mod decimal;
pub mod dissection;
pub mod divdiff;
pub mod implicit;
pub mod rational;
pub mod seq;
pub mod series;
pub mod terms;

pub use rational::BigRational;
pub use series::RationalSeries;
