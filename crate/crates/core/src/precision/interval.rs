use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use super::dyadic::{Dyadic, Round};
use super::{elementary, PrecisionError};
use crate::exact::Rat;

/// Closed interval `[lo, hi]` with dyadic endpoints. Every operation rounds
/// outward to `prec` significant bits, so the result always contains the
/// exact value of the operation applied to any points of the operands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub(super) lo: Dyadic,
    pub(super) hi: Dyadic,
    pub(super) prec: u32,
}

impl Interval {
    /// Builds `[lo, hi]`, rounding outward to `prec` bits.
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        Self::new(x.clone(), x, prec)
    }

    pub fn from_int<T: Into<BigInt>>(v: T, prec: u32) -> Self {
        Self::point(Dyadic::from_int(v), prec)
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_rat(r, prec, Round::Down),
            hi: Dyadic::from_rat(r, prec, Round::Up),
            prec,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same enclosure re-rounded (outward) to a new precision.
    pub fn with_prec(&self, prec: u32) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn width_rat(&self) -> Rat {
        self.width().to_rat()
    }

    pub fn contains_rat(&self, x: &Rat) -> bool {
        &self.lo.to_rat() <= x && x <= &self.hi.to_rat()
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Whether every point of `self` is strictly below every point of `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt(&self, other: &Interval) -> bool {
        self.lo > other.hi
    }

    /// `Some(ordering)` when the enclosures are disjoint, `None` otherwise.
    pub fn compare(&self, other: &Interval) -> Option<Ordering> {
        if self.certainly_lt(other) {
            Some(Ordering::Less)
        } else if self.certainly_gt(other) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn compare_rat(&self, x: &Rat) -> Option<Ordering> {
        if self.hi.to_rat() < *x {
            Some(Ordering::Less)
        } else if self.lo.to_rat() > *x {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            let m = self.lo.abs().max(self.hi.clone());
            Interval::new(Dyadic::zero(), m, self.prec)
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn mul_int<T: Into<BigInt>>(&self, k: T) -> Interval {
        self * &Interval::point(Dyadic::from_int(k), u32::MAX)
    }

    pub fn div_int<T: Into<BigInt>>(&self, k: T) -> Result<Interval, PrecisionError> {
        self.checked_div(&Interval::point(Dyadic::from_int(k), u32::MAX))
    }

    pub fn add_rat(&self, r: &Rat) -> Interval {
        self + &Interval::from_rat(r, self.prec + 8)
    }

    pub fn checked_div(&self, other: &Interval) -> Result<Interval, PrecisionError> {
        if !other.lo.is_positive() && !other.hi.is_negative() {
            return Err(PrecisionError::DivisionByZero);
        }
        let prec = result_prec(self, other);
        let cands = |dir| {
            [
                self.lo.div_round(&other.lo, prec, dir),
                self.lo.div_round(&other.hi, prec, dir),
                self.hi.div_round(&other.lo, prec, dir),
                self.hi.div_round(&other.hi, prec, dir),
            ]
        };
        let lo = cands(Round::Down).into_iter().min().expect("four candidates");
        let hi = cands(Round::Up).into_iter().max().expect("four candidates");
        Ok(Interval { lo, hi, prec })
    }

    pub fn recip(&self) -> Result<Interval, PrecisionError> {
        Interval::from_int(1, self.prec).checked_div(self)
    }

    pub fn sqr(&self) -> Interval {
        let a = self.abs();
        Interval::new(a.lo.mul(&a.lo), a.hi.mul(&a.hi), self.prec)
    }

    pub fn sqrt(&self) -> Result<Interval, PrecisionError> {
        if self.lo.is_negative() {
            return Err(PrecisionError::Domain("sqrt of a possibly negative value"));
        }
        Ok(Interval {
            lo: self.lo.sqrt_round(self.prec, Round::Down),
            hi: self.hi.sqrt_round(self.prec, Round::Up),
            prec: self.prec,
        })
    }

    pub fn ln(&self) -> Result<Interval, PrecisionError> {
        if !self.lo.is_positive() {
            return Err(PrecisionError::Domain("ln of a possibly nonpositive value"));
        }
        let w = self.prec.saturating_add(elementary::GUARD_BITS);
        let lo = elementary::ln_point(&self.lo.round(w, Round::Down), w);
        let hi = if self.lo == self.hi {
            lo.clone()
        } else {
            elementary::ln_point(&self.hi.round(w, Round::Up), w)
        };
        Ok(Interval::new(lo.lo, hi.hi, self.prec))
    }

    pub fn exp(&self) -> Result<Interval, PrecisionError> {
        let w = self.prec.saturating_add(elementary::GUARD_BITS);
        let lo = elementary::exp_point(&self.lo, w)?;
        let hi = if self.lo == self.hi {
            lo.clone()
        } else {
            elementary::exp_point(&self.hi, w)?
        };
        Ok(Interval::new(lo.lo, hi.hi, self.prec))
    }

    /// Decimal rendering of the endpoints in scientific notation with
    /// `digits` significant digits, rounded outward.
    pub fn to_sci(&self, digits: u32) -> (String, String) {
        (
            elementary::to_sci(&self.lo, digits, Round::Down),
            elementary::to_sci(&self.hi, digits, Round::Up),
        )
    }
}

fn result_prec(a: &Interval, b: &Interval) -> u32 {
    match (a.prec, b.prec) {
        (u32::MAX, p) | (p, u32::MAX) => p,
        (p, q) => p.max(q),
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        let prec = result_prec(self, rhs);
        Interval {
            lo: self.lo.add_round(&rhs.lo, prec, Round::Down),
            hi: self.hi.add_round(&rhs.hi, prec, Round::Up),
            prec,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        let prec = result_prec(self, rhs);
        Interval {
            lo: self.lo.add_round(&rhs.hi.neg(), prec, Round::Down),
            hi: self.hi.add_round(&rhs.lo.neg(), prec, Round::Up),
            prec,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let prec = result_prec(self, rhs);
        let cands = [
            self.lo.mul(&rhs.lo),
            self.lo.mul(&rhs.hi),
            self.hi.mul(&rhs.lo),
            self.hi.mul(&rhs.hi),
        ];
        let lo = cands.iter().min().expect("four candidates");
        let hi = cands.iter().max().expect("four candidates");
        Interval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval { (&self).$m(&rhs) }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: &Interval) -> Interval { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_sci(20);
        write!(f, "[{lo}, {hi}]")
    }
}

impl Interval {
    pub fn one(prec: u32) -> Interval {
        Interval::point(Dyadic::from_int(BigInt::one()), prec)
    }

    pub fn zero(prec: u32) -> Interval {
        Interval::point(Dyadic::zero(), prec)
    }

    pub fn lo_rat(&self) -> Rat {
        self.lo.to_rat()
    }

    pub fn hi_rat(&self) -> Rat {
        self.hi.to_rat()
    }

    /// `self^k` by repeated squaring.
    pub fn powi(&self, k: u32) -> Interval {
        let mut acc = Interval::one(self.prec);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn is_zero_width(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }
}
