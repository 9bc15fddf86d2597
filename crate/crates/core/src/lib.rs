//! Exact derivation, certification and reproduction of precise Stirling
//! bounds of the form `n! ≷ √(2πn)(n/e)ⁿ·e^{a(n)}`.
//!
//! The pipeline is:
//!
//! 1. parse a correction term `a(n)` ([`expr`]) into an exact rational
//!    function ([`exact::RatFunc`]);
//! 2. subtract the telescoping difference `a(n) − a(n+1)` from a truncated
//!    Stirling series ([`series`]) and clear denominators, giving an integer
//!    polynomial whose eventual sign implies the bound ([`certify`]);
//! 3. certify the sign threshold by root bounds, exact integer evaluation and
//!    a Sturm cross-check, then settle the finitely many base cases with
//!    adaptive-precision interval arithmetic ([`precision`]).
//!
//! [`wallis`] holds the Wallis-integral machinery that pins the constant
//! `√(2π)`, and [`catalog`] encodes the published bounds and reproduces them.

pub mod catalog;
pub mod certify;
pub mod exact;
pub mod expr;
pub mod precision;
pub mod series;
pub mod wallis;

pub use certify::{BoundSpec, Certificate};
pub use exact::{Poly, Rat, RatFunc};
pub use precision::Interval;

/// Which side of `n!` a bound sits on: `Lower` bounds satisfy
/// `n! ≥ bound`, `Upper` bounds `n! ≤ bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
}
