//! Adaptive-precision interval arithmetic with outward rounding.
//!
//! Intervals carry dyadic endpoints and a working precision; no operation
//! depends on a global rounding mode, so everything here is safe to use from
//! several threads at once.

mod dyadic;
mod elementary;
mod interval;
mod stirling;

use thiserror::Error;

pub use dyadic::{Dyadic, Round};
pub use elementary::parse_sci;
pub use interval::Interval;
pub use stirling::{
    const_enclosure, eval_log_bound, factorial, ln_factorial, stirling_ratio, strict_compare,
    Constant, Decision,
};

/// Starting precision for adaptive comparisons, in bits.
pub const START_PREC: u32 = 64;
/// Default precision ceiling for adaptive comparisons, in bits.
pub const DEFAULT_CEILING: u32 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
    Undecidable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrecisionError {
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("correction term has a pole at n = {0}")]
    Pole(u64),
    #[error("comparison at n = {n} still undecided at {ceiling} bits")]
    Undecidable { n: u64, ceiling: u32 },
}

/// Runs `step` at 64, 128, … bits up to `ceiling` until it returns `Some`.
/// Yields the result together with the deciding precision.
pub fn escalate<T, E>(
    ceiling: u32,
    mut step: impl FnMut(u32) -> Result<Option<T>, E>,
) -> Result<Option<(T, u32)>, E> {
    let mut prec = START_PREC;
    loop {
        if let Some(v) = step(prec)? {
            return Ok(Some((v, prec)));
        }
        if prec >= ceiling {
            return Ok(None);
        }
        prec = prec.saturating_mul(2).min(ceiling);
    }
}
