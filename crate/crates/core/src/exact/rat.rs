use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::ExactError;

/// Arbitrary-precision rational, always stored with a positive, coprime
/// denominator (zero is `0/1`).
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rat {
    Rat::from_integer(BigInt::from(value))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(a: &Rat, b: &Rat, op: ArithOp) -> Result<Rat, ExactError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => {
            if b.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            a / b
        }
    })
}

/// Exact decimal expansion of `value` if its denominator has no prime
/// factors other than 2 and 5.
pub fn terminating_decimal(value: &Rat) -> Option<String> {
    let mut den = value.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0u32, 0u32);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if den != BigInt::from(1) {
        return None;
    }
    let places = twos.max(fives);
    if places == 0 {
        return Some(value.numer().to_string());
    }
    let scaled = value * Rat::from_integer(num_traits::pow(BigInt::from(10), places as usize));
    let digits = scaled.to_integer().abs().to_string();
    let places = places as usize;
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (whole, frac) = padded.split_at(padded.len() - places);
    let sign = if value.is_negative() { "-" } else { "" };
    Some(format!("{sign}{whole}.{frac}"))
}
