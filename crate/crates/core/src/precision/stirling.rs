//! Factorials, the classical constants and log-space evaluation of
//! `√(2πn)(n/e)ⁿ·e^{a(n)}`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use super::dyadic::{Dyadic, Round};
use super::elementary::{exp_point, pi};
use super::interval::Interval;
use super::{escalate, PrecisionError};
use crate::exact::{int, Rat, RatFunc};
use crate::Direction;

/// Largest `n` for which [`ln_factorial`] goes through the exact integer.
const EXACT_FACTORIAL_LIMIT: u64 = 100_000;

/// Exact `n!` by a balanced product tree.
pub fn factorial(n: u64) -> BigInt {
    fn range_product(lo: u64, hi: u64) -> BigInt {
        match hi - lo {
            0 => BigInt::one(),
            1 => BigInt::from(lo),
            2 => BigInt::from(lo) * BigInt::from(lo + 1),
            len => {
                let mid = lo + len / 2;
                range_product(lo, mid) * range_product(mid, hi)
            }
        }
    }
    range_product(1, n + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    Pi,
    E,
    Sqrt2Pi,
}

/// Enclosure of `which` with width at most `2^{2−prec}`.
pub fn const_enclosure(which: Constant, prec: u32) -> Interval {
    let prec = prec.max(16);
    let w = prec + 8;
    let raw = match which {
        Constant::Pi => pi(w),
        Constant::E => exp_point(&Dyadic::from_int(1), w).expect("exp(1) is in range"),
        Constant::Sqrt2Pi => pi(w).mul_pow2(1).sqrt().expect("2π > 0"),
    };
    // every constant lies in [2, 4), so prec + 2 bits means an ulp of 2^{-prec}
    raw.with_prec(prec + 2)
}

fn ln_of_int(x: &BigInt, prec: u32) -> Interval {
    Interval::point(Dyadic::from_int(x.clone()), prec + 8)
        .ln()
        .expect("positive integer")
        .with_prec(prec)
}

/// Enclosure of `ln n!`. Exact for moderate `n`; beyond that the product is
/// accumulated with outward rounding.
pub fn ln_factorial(n: u64, prec: u32) -> Interval {
    if n <= EXACT_FACTORIAL_LIMIT {
        return ln_of_int(&factorial(n), prec);
    }
    let w = prec + 32 + (64 - n.leading_zeros());
    let mut lo = Dyadic::from_int(1);
    let mut hi = Dyadic::from_int(1);
    for k in 2..=n {
        let k = Dyadic::from_int(k);
        lo = lo.mul(&k).round(w, Round::Down);
        hi = hi.mul(&k).round(w, Round::Up);
    }
    Interval::new(lo, hi, w).ln().expect("positive").with_prec(prec)
}

/// Enclosure of `½ln(2πn) + n·ln n − n + a(n)`, the logarithm of
/// `√(2πn)(n/e)ⁿ·e^{a(n)}`.
pub fn eval_log_bound(n: u64, a: &RatFunc, prec: u32) -> Result<Interval, PrecisionError> {
    if n == 0 {
        return Err(PrecisionError::Domain("bound is evaluated for n >= 1"));
    }
    let av = a.eval(&int(n as i64)).map_err(|_| PrecisionError::Pole(n))?;
    Ok(log_bound_with(n, &av, prec))
}

fn log_bound_with(n: u64, av: &Rat, prec: u32) -> Interval {
    let w = prec + 16;
    let ln_n = Interval::from_int(n, w).ln().expect("n >= 1");
    let ln_2pi = pi(w).mul_pow2(1).ln().expect("2π > 0");
    let half = (&ln_2pi + &ln_n).mul_pow2(-1);
    let body = &ln_n.mul_int(n) - &Interval::from_int(n, w);
    (&(&half + &body) + &Interval::from_rat(av, w)).with_prec(prec)
}

/// Outcome of a decided comparison.
#[derive(Debug, Clone)]
pub struct Decision {
    /// Whether the bound holds in the requested direction.
    pub holds: bool,
    /// Precision (bits) at which the enclosures separated.
    pub precision: u32,
    /// Enclosure of `ln n! − ln(bound)`.
    pub log_margin: Interval,
}

/// Decides `n! > bound` (lower) or `n! < bound` (upper) strictly, doubling
/// the working precision from 64 bits up to `ceiling`.
pub fn strict_compare(
    n: u64,
    a: &RatFunc,
    direction: Direction,
    ceiling: u32,
) -> Result<Decision, PrecisionError> {
    if n == 0 {
        return Err(PrecisionError::Domain("bound is evaluated for n >= 1"));
    }
    let av = a.eval(&int(n as i64)).map_err(|_| PrecisionError::Pole(n))?;
    let exact = (n <= EXACT_FACTORIAL_LIMIT).then(|| factorial(n));
    let found = escalate(ceiling, |prec| {
        let lf = match &exact {
            Some(f) => ln_of_int(f, prec),
            None => ln_factorial(n, prec),
        };
        let lb = log_bound_with(n, &av, prec);
        Ok::<_, PrecisionError>(lf.compare(&lb).map(|ord| (ord, &lf - &lb)))
    })?;
    let ((ord, log_margin), precision) =
        found.ok_or(PrecisionError::Undecidable { n, ceiling })?;
    let holds = match direction {
        Direction::Lower => ord == Ordering::Greater,
        Direction::Upper => ord == Ordering::Less,
    };
    Ok(Decision {
        holds,
        precision,
        log_margin,
    })
}

/// Enclosure of `n!·eⁿ/n^{n+½}`.
pub fn stirling_ratio(n: u64, prec: u32) -> Interval {
    assert!(n >= 1, "stirling_ratio needs n >= 1");
    let w = prec + 16 + (64 - n.leading_zeros());
    let ln_n = Interval::from_int(n, w).ln().expect("n >= 1");
    let power = ln_n.mul_int(2 * n + 1).mul_pow2(-1);
    let log = &(&ln_factorial(n, w) + &Interval::from_int(n, w)) - &power;
    log.exp().expect("ratio logarithm is small").with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Poly};
    use num_traits::Signed;

    fn dec(s: &str) -> Rat {
        let (w, f) = s.split_once('.').unwrap_or((s, ""));
        let digits: BigInt = format!("{w}{f}").parse().unwrap();
        Rat::new(digits, num_traits::pow(BigInt::from(10), f.len()))
    }

    fn recip(coeffs: &[i64]) -> RatFunc {
        RatFunc::new(Poly::one(), Poly::from_ints(coeffs)).unwrap()
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(12), BigInt::from(479001600u64));
    }

    #[test]
    fn constants_are_enclosed_tightly() {
        let cases = [
            (Constant::Pi, "3.14159265358979323846"),
            (Constant::E, "2.71828182845904523536"),
            (Constant::Sqrt2Pi, "2.50662827463100050241"),
        ];
        for (which, digits) in cases {
            let iv = const_enclosure(which, 64);
            let lo = dec(digits);
            let hi = &lo + Rat::new(BigInt::one(), num_traits::pow(BigInt::from(10), 20));
            assert!(iv.lo_rat() < hi && iv.hi_rat() > lo, "{which:?}: {iv}");
            assert!(iv.width_rat() <= rat(1, 1) / Rat::from_integer(BigInt::one() << 62usize));
        }
    }

    #[test]
    fn log_bound_examples() {
        let zero = RatFunc::zero();
        let b1 = eval_log_bound(1, &zero, 64).unwrap();
        assert!((b1.lo_rat() - dec("-0.0810614667953272")).abs() < rat(1, 1_000_000_000_000));
        let b3 = eval_log_bound(3, &zero, 64).unwrap();
        assert!((b3.lo_rat() - dec("1.7640815435")).abs() < rat(1, 10_000_000_000));
        let a = recip(&[0, 120]);
        let w1 = eval_log_bound(10, &a, 64).unwrap().width_rat();
        let w2 = eval_log_bound(10, &a, 128).unwrap().width_rat();
        assert!(w2 * Rat::from_integer(BigInt::from(2)) <= w1);
        assert_eq!(
            eval_log_bound(2, &recip(&[-2, 1]), 64),
            Err(PrecisionError::Pole(2))
        );
    }

    #[test]
    fn compare_examples() {
        let robbins_upper = recip(&[0, 12]);
        let d = strict_compare(1, &robbins_upper, Direction::Upper, 1 << 14).unwrap();
        assert!(d.holds);
        assert_eq!(d.precision, 64);

        // a = 1/(12n) − 1/(360n³) + 2/(5n) − 0.9/(10n³) ... only the n = 3
        // margin matters here: it is about 4·10⁻⁷ in the exponent.
        let abstract_lower = crate::expr::parse_ratfunc(
            "1/(12*n+2/(5*n)-0.9/(10*n^3))",
        )
        .unwrap();
        let d = strict_compare(3, &abstract_lower, Direction::Lower, 1 << 14).unwrap();
        assert!(d.holds);
        assert!(d.log_margin.hi_rat() < rat(1, 1_000_000));
    }

    #[test]
    fn tie_is_undecidable_at_low_ceiling() {
        // a(2) = ln 2 − (½ln(4π) + 2ln2 − 2) to 30 digits
        let target = eval_log_bound(2, &RatFunc::zero(), 256).unwrap();
        let ln2 = ln_factorial(2, 256);
        let gap = (&ln2 - &target).mid().to_rat();
        let scale = num_traits::pow(BigInt::from(10), 30);
        let approx = Rat::new((gap * Rat::from_integer(scale.clone())).round().to_integer(), scale);
        let a = RatFunc::constant(approx);
        assert_eq!(
            strict_compare(2, &a, Direction::Lower, 64).unwrap_err(),
            PrecisionError::Undecidable { n: 2, ceiling: 64 }
        );
        let high = strict_compare(2, &a, Direction::Lower, 1 << 14).unwrap();
        assert!(high.precision > 64);
    }

    #[test]
    fn ratio_examples() {
        let r1 = stirling_ratio(1, 64);
        assert!(r1.contains(&const_enclosure(Constant::E, 128)) || {
            let e = const_enclosure(Constant::E, 256);
            r1.lo <= e.lo && e.hi <= r1.hi
        });
        let r2 = stirling_ratio(2, 64);
        assert!((r2.lo_rat() - dec("2.6124258")).abs() < rat(1, 1_000_000));
        let big = stirling_ratio(1_000_000, 64);
        let s = const_enclosure(Constant::Sqrt2Pi, 64);
        let gap = &big - &s;
        assert!(gap.lo.is_positive());
        assert!(gap.hi_rat() < rat(22, 100_000_000));
    }
}
