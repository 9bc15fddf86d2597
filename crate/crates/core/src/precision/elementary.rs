//! Enclosures of ln, exp, π and decimal conversion.
//!
//! Every series is summed in interval arithmetic and closed with an explicit
//! remainder interval, so the returned enclosure is rigorous at any
//! precision.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::dyadic::{Dyadic, Round};
use super::interval::Interval;
use super::PrecisionError;
use crate::exact::Rat;

pub(super) const GUARD_BITS: u32 = 32;

fn magnitude(x: &Interval) -> Dyadic {
    x.lo.abs().max(x.hi.abs())
}

/// True once `|x| < 2^-bits`.
fn negligible(x: &Interval, bits: u32) -> bool {
    let m = magnitude(x);
    m.is_zero() || m.top() < -(bits as i64)
}

fn symmetric(radius: Dyadic, prec: u32) -> Interval {
    Interval::new(radius.neg(), radius, prec)
}

/// `Σ_{j≥0} t^{2j+1}/(2j+1)` (that is, `atanh t`) for `|t| ≤ 1/3`.
fn atanh_series(t: &Interval, w: u32) -> Interval {
    let t2 = t.sqr();
    let mut pow = t.clone();
    let mut sum = Interval::zero(w);
    let mut j: u64 = 0;
    while !negligible(&pow, w + 4) {
        let term = pow.div_int(2 * j + 1).expect("odd divisor");
        sum = &sum + &term;
        pow = &pow * &t2;
        j += 1;
    }
    // remaining terms are bounded by |pow|/(1 − t²) ≤ 9/8·|pow|
    &sum + &symmetric(magnitude(&pow).mul_pow2(1), w)
}

pub(super) fn ln2(w: u32) -> Interval {
    let t = Interval::from_rat(&Rat::new(BigInt::one(), BigInt::from(3)), w);
    atanh_series(&t, w).mul_pow2(1)
}

/// Enclosure of `ln x` for a positive dyadic `x`.
pub(super) fn ln_point(x: &Dyadic, w: u32) -> Interval {
    debug_assert!(x.is_positive());
    let bits = x.mantissa().bits() as i64;
    let mut k = x.exponent() + bits - 1;
    // m ∈ [1, 2)
    let mut m = Dyadic::new(x.mantissa().clone(), -(bits - 1));
    if m > Dyadic::new(BigInt::from(3), -1) {
        m = m.mul_pow2(-1);
        k += 1;
    }
    let m = Interval::point(m, w);
    let one = Interval::one(w);
    let t = (&m - &one)
        .checked_div(&(&m + &one))
        .expect("m + 1 > 0");
    let mut out = atanh_series(&t, w).mul_pow2(1);
    if k != 0 {
        let kbits = 64 - k.unsigned_abs().leading_zeros();
        let l2 = ln2(w + kbits + 8);
        out = &out + &l2.mul_int(k);
    }
    out
}

/// Enclosure of `exp x` for a dyadic `x`.
pub(super) fn exp_point(x: &Dyadic, w: u32) -> Result<Interval, PrecisionError> {
    let xf = x.to_f64();
    if !xf.is_finite() || xf.abs() > 1e15 {
        return Err(PrecisionError::Domain("exp argument out of range"));
    }
    let k = (xf / std::f64::consts::LN_2).round() as i64;
    let kbits = 64 - k.unsigned_abs().leading_zeros();
    let wr = w + kbits + 16;
    let mut r = Interval::point(x.clone(), wr);
    if k != 0 {
        r = &r - &ln2(wr).mul_int(k);
    }
    let halvings = ((w as f64).sqrt() / 2.0) as i64 + 4;
    let wt = wr + halvings as u32 + 16;
    let y = r.with_prec(wt).mul_pow2(-halvings);

    let mut sum = Interval::one(wt);
    let mut term = Interval::one(wt);
    let mut j: u64 = 1;
    loop {
        term = (&term * &y).div_int(j).expect("positive divisor");
        sum = &sum + &term;
        j += 1;
        if negligible(&term, wt + 4) {
            break;
        }
    }
    // tail ≤ |term|·|y|/(1 − |y|) ≤ 2·|term|·|y|
    let tail = magnitude(&term).mul(&magnitude(&y)).mul_pow2(1);
    sum = &sum + &symmetric(tail, wt);
    for _ in 0..halvings {
        sum = sum.sqr();
    }
    Ok(sum.mul_pow2(k))
}

/// `atan(1/x)` by its alternating Taylor series.
fn atan_inv(x: u64, w: u32) -> Interval {
    let mut pow = Interval::from_rat(&Rat::new(BigInt::one(), BigInt::from(x)), w);
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut sum = Interval::zero(w);
    let mut j: u64 = 0;
    while !negligible(&pow, w + 4) {
        let term = pow.div_int(2 * j + 1).expect("odd divisor");
        sum = if j % 2 == 0 { &sum + &term } else { &sum - &term };
        pow = pow.div_int(x2.clone()).expect("positive divisor");
        j += 1;
    }
    &sum + &symmetric(magnitude(&pow), w)
}

pub(super) fn pi(w: u32) -> Interval {
    let wp = w + 16;
    let a = atan_inv(5, wp).mul_int(16);
    let b = atan_inv(239, wp).mul_int(4);
    (&a - &b).with_prec(w)
}

/// Scientific-notation rendering of `x` with `digits` significant digits,
/// rounded in direction `dir`.
pub(super) fn to_sci(x: &Dyadic, digits: u32, dir: Round) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return "0".to_string();
    }
    if x.is_negative() {
        let flipped = match dir {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        };
        return format!("-{}", to_sci(&x.neg(), digits, flipped));
    }
    // estimate the decimal exponent, then settle it with exact arithmetic
    let top_bits = 64 - x.top().unsigned_abs().leading_zeros();
    let w = 64 + top_bits;
    let lx = Interval::point(x.clone(), w).ln().expect("positive");
    let mut e10 = (lx.to_f64() / std::f64::consts::LN_10).floor() as i64;
    let value = x.to_rat();
    let ten = BigInt::from(10);
    let upper = num_traits::pow(ten.clone(), digits as usize);
    let lower = num_traits::pow(ten.clone(), digits as usize - 1);
    let pow10 = |k: i64| {
        let p = Rat::from_integer(num_traits::pow(ten.clone(), k.unsigned_abs() as usize));
        if k >= 0 {
            p
        } else {
            p.recip()
        }
    };
    let mantissa = loop {
        let scaled = &value / pow10(e10 - digits as i64 + 1);
        let m = match dir {
            Round::Down => scaled.floor().to_integer(),
            Round::Up => scaled.ceil().to_integer(),
        };
        if scaled < Rat::from_integer(lower.clone()) {
            e10 -= 1;
        } else if scaled >= Rat::from_integer(upper.clone()) {
            e10 += 1;
        } else if m == upper {
            // rounding up carried into a new digit
            e10 += 1;
            break lower.clone();
        } else {
            break m;
        }
    };
    let s = mantissa.to_string();
    let (head, tail) = s.split_at(1);
    if tail.is_empty() {
        format!("{head}e{e10}")
    } else {
        format!("{head}.{tail}e{e10}")
    }
}

/// Parses the output of [`to_sci`] back into an exact rational.
pub fn parse_sci(text: &str) -> Option<Rat> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    if body == "0" {
        return Some(Rat::zero());
    }
    let (mant, exp) = body.split_once('e')?;
    let exp: i64 = exp.parse().ok()?;
    let frac_len = mant.split_once('.').map_or(0, |(_, f)| f.len()) as i64;
    let digits: BigInt = mant.replace('.', "").parse().ok()?;
    let e = exp - frac_len;
    let ten = BigInt::from(10);
    let scale = num_traits::pow(ten, e.unsigned_abs().to_usize()?);
    let v = if e >= 0 {
        Rat::from_integer(digits * scale)
    } else {
        Rat::new(digits, scale)
    };
    Some(if neg { -v } else { v })
}
