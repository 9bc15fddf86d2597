//! Wallis integrals `Iₙ = ∫₀^{π/2} sinⁿx dx`, kept exactly as `q·π^{0|1}`,
//! the sandwich `√(πn) < 2^{2n}(n!)²/(2n)! < √(π(n+½))`, and the
//! convergence of `n!eⁿ/n^{n+½}` to `√(2π)`.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::{int, rat, Rat};
use crate::precision::{
    const_enclosure, escalate, factorial, stirling_ratio, Constant, Interval, PrecisionError,
    Verdict,
};

/// `Iₙ = q·π^{pi_power}`; `pi_power` is 1 exactly for even `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallisValue {
    #[serde(with = "crate::exact::serde_str::rat_str")]
    pub q: Rat,
    pub pi_power: u8,
}

impl WallisValue {
    pub fn enclose(&self, prec: u32) -> Interval {
        let q = Interval::from_rat(&self.q, prec + 8);
        let v = if self.pi_power == 1 {
            &q * &const_enclosure(Constant::Pi, prec + 8)
        } else {
            q
        };
        v.with_prec(prec)
    }
}

/// `Iₙ` through `Iₙ = (n−1)/n·Iₙ₋₂` from `I₀ = π/2`, `I₁ = 1`, checked
/// against the closed form.
pub fn wallis_integral(n: u64) -> WallisValue {
    let (mut q, start) = if n % 2 == 0 {
        (rat(1, 2), 2)
    } else {
        (Rat::one(), 3)
    };
    let mut k = start;
    while k <= n {
        q = q * Rat::new(BigInt::from(k - 1), BigInt::from(k));
        k += 2;
    }
    let v = WallisValue {
        q,
        pi_power: u8::from(n % 2 == 0),
    };
    assert_eq!(v, wallis_closed_form(n), "recursion disagrees with closed form at n = {n}");
    v
}

/// `I₂ₘ = (2m)!/(2^{2m}(m!)²)·π/2`, `I₂ₘ₊₁ = 2^{2m}(m!)²/(2m+1)!`.
pub fn wallis_closed_form(n: u64) -> WallisValue {
    let m = n / 2;
    let mf = factorial(m);
    let central = (&mf * &mf) << (2 * m as usize);
    if n % 2 == 0 {
        WallisValue {
            q: Rat::new(factorial(2 * m), central * 2),
            pi_power: 1,
        }
    } else {
        WallisValue {
            q: Rat::new(central, factorial(2 * m + 1)),
            pi_power: 0,
        }
    }
}

/// Decides `x ⋚ π` for rational `x`, escalating precision.
fn compare_with_pi(x: &Rat, n: u64, ceiling: u32) -> Result<Ordering, PrecisionError> {
    let decided = escalate(ceiling, |prec| {
        Ok::<_, PrecisionError>(
            const_enclosure(Constant::Pi, prec)
                .compare_rat(x)
                .map(Ordering::reverse),
        )
    })?;
    decided
        .map(|(ord, _)| ord)
        .ok_or(PrecisionError::Undecidable { n, ceiling })
}

/// `Iₙ < Iₙ₋₁`. Consecutive integrals differ in parity, so this is a single
/// comparison of a rational with π.
pub fn wallis_monotone_check(n: u64, ceiling: u32) -> Result<Verdict, PrecisionError> {
    assert!(n >= 1, "wallis_monotone_check needs n >= 1");
    let cur = wallis_integral(n);
    let prev = wallis_integral(n - 1);
    let holds = if cur.pi_power == 1 {
        // q·π < q' ⇔ π < q'/q
        compare_with_pi(&(&prev.q / &cur.q), n, ceiling)? == Ordering::Greater
    } else {
        // q < q'·π ⇔ q/q' < π
        compare_with_pi(&(&cur.q / &prev.q), n, ceiling)? == Ordering::Less
    };
    Ok(if holds { Verdict::Holds } else { Verdict::Violated })
}

/// `2^{2n}(n!)²/(2n)!`, exactly.
pub fn sandwich_middle(n: u64) -> Rat {
    let f = factorial(n);
    Rat::new((&f * &f) << (2 * n as usize), factorial(2 * n))
}

/// `√(πn) < M < √(π(n+½))` with `M` the exact middle term; squared, both
/// sides are comparisons of a rational with π.
pub fn wallis_sandwich_check(n: u64, ceiling: u32) -> Result<Verdict, PrecisionError> {
    assert!(n >= 1, "wallis_sandwich_check needs n >= 1");
    let m2 = {
        let m = sandwich_middle(n);
        &m * &m
    };
    // πn < M² ⇔ π < M²/n
    let left = compare_with_pi(&(&m2 / int(n as i64)), n, ceiling)? == Ordering::Greater;
    // M² < π(n+½) ⇔ M²/(n+½) < π
    let half = Rat::from_integer(BigInt::from(n)) + rat(1, 2);
    let right = compare_with_pi(&(&m2 / half), n, ceiling)? == Ordering::Less;
    Ok(if left && right {
        Verdict::Holds
    } else {
        Verdict::Violated
    })
}

/// Enclosure of `√(π(n+½)) − √(πn)`.
pub fn sandwich_gap(n: u64, prec: u32) -> Interval {
    let pi = const_enclosure(Constant::Pi, prec + 16);
    let hi = (&pi * &Interval::from_rat(&(int(n as i64) + rat(1, 2)), prec + 16))
        .sqrt()
        .expect("positive");
    let lo = pi.mul_int(n).sqrt().expect("positive");
    (&hi - &lo).with_prec(prec)
}

#[derive(Debug, Clone)]
pub struct RatioRow {
    pub n: u64,
    /// Enclosure of `n!eⁿ/n^{n+½}`.
    pub ratio: Interval,
    /// Enclosure of `ratio − √(2π)`.
    pub gap: Interval,
    /// Whether `e^{−1/(2n)}√(2π) ≤ ratio ≤ √(1+1/(2n))·√(2π)` was verified.
    pub envelope: Verdict,
}

/// Rows of `n!eⁿ/n^{n+½}` enclosures with their distance to `√(2π)`, each
/// checked against the two-sided envelope.
pub fn ratio_limit_table(ns: &[u64], prec: u32) -> Result<Vec<RatioRow>, PrecisionError> {
    if ns.is_empty() {
        return Err(PrecisionError::Domain("empty list of n"));
    }
    ns.iter()
        .map(|&n| {
            if n == 0 {
                return Err(PrecisionError::Domain("ratio table needs n >= 1"));
            }
            let ratio = stirling_ratio(n, prec);
            let s = const_enclosure(Constant::Sqrt2Pi, prec + 8);
            let w = prec + 8;
            let two_n = Rat::from_integer(BigInt::from(2 * n));
            let lower = &Interval::from_rat(&-two_n.recip(), w).exp()? * &s;
            let upper = &Interval::from_rat(&(Rat::one() + two_n.recip()), w).sqrt()? * &s;
            let envelope = match (lower.compare(&ratio), ratio.compare(&upper)) {
                (Some(Ordering::Less), Some(Ordering::Less)) => Verdict::Holds,
                (Some(Ordering::Greater), _) | (_, Some(Ordering::Greater)) => Verdict::Violated,
                _ => return Err(PrecisionError::Undecidable { n, ceiling: prec }),
            };
            Ok(RatioRow {
                n,
                gap: (&ratio - &s).with_prec(prec),
                ratio,
                envelope,
            })
        })
        .collect()
}

/// CSV with columns `n,lo,hi,gap_to_sqrt2pi`; the gap column is an upper
/// bound on `|ratio − √(2π)|`.
pub fn ratio_table_csv(rows: &[RatioRow], digits: u32) -> String {
    let mut out = String::from("n,lo,hi,gap_to_sqrt2pi\n");
    for row in rows {
        let (lo, hi) = row.ratio.to_sci(digits);
        let gap = row.gap.abs();
        let (_, gap_hi) = gap.to_sci(digits);
        let _ = writeln!(out, "{},{lo},{hi},{gap_hi}", row.n);
    }
    out
}

impl WallisValue {
    pub fn is_positive(&self) -> bool {
        self.q > Rat::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::DEFAULT_CEILING;

    #[test]
    fn small_integrals() {
        assert_eq!(wallis_integral(0), WallisValue { q: rat(1, 2), pi_power: 1 });
        assert_eq!(wallis_integral(1), WallisValue { q: int(1), pi_power: 0 });
        assert_eq!(wallis_integral(5), WallisValue { q: rat(8, 15), pi_power: 0 });
        assert_eq!(wallis_integral(2), WallisValue { q: rat(1, 4), pi_power: 1 });
    }

    #[test]
    fn monotone_examples() {
        for n in [1, 2, 100] {
            assert_eq!(wallis_monotone_check(n, DEFAULT_CEILING), Ok(Verdict::Holds));
        }
    }

    #[test]
    fn sandwich_examples() {
        assert_eq!(sandwich_middle(1), int(2));
        assert_eq!(sandwich_middle(2), rat(8, 3));
        for n in [1, 2, 1000] {
            assert_eq!(wallis_sandwich_check(n, DEFAULT_CEILING), Ok(Verdict::Holds));
        }
    }

    #[test]
    fn ratio_rows() {
        let rows = ratio_limit_table(&[1, 100, 10_000], 64).unwrap();
        assert!(rows.iter().all(|r| r.envelope == Verdict::Holds));
        let e = const_enclosure(Constant::E, 128);
        assert!(rows[0].ratio.compare(&e).is_none(), "n = 1 ratio is e");
        assert!(rows[1].gap.hi_rat() < rat(22, 10_000));
        assert!(rows[2].gap.hi_rat() < rat(22, 1_000_000));
        let csv = ratio_table_csv(&rows, 10);
        assert!(csv.starts_with("n,lo,hi,gap_to_sqrt2pi\n1,2.718281828e0,2.718281829e0,"));
    }
}
