//! The Stirling series of `f(n) = (n+½)·ln(1+1/n) − 1`,
//!
//! ```text
//! f(n) = Σ_{k≥2} (−1)ᵏ(k−1) / (2k(k+1)) · n⁻ᵏ,
//! ```
//!
//! its partial sums, expansion of rational functions in powers of `1/n`,
//! and matching of one-parameter correction families against the series.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{int, Poly, Rat, RatFunc};
use crate::precision::{escalate, Interval, Verdict};

/// Expansion order used when none is requested explicitly.
pub const DEFAULT_ORDER: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series coefficients start at k = 2 (got {0})")]
    IndexTooSmall(u32),
    #[error("family does not depend on c at order {0}")]
    NoDependence(u32),
    #[error("family already depends on c at order {0}, below the target")]
    NotFirstOrder(u32),
    #[error("family depends nonlinearly on c at order {0}")]
    Nonlinear(u32),
    #[error("family template could not be evaluated: {0}")]
    Template(String),
}

/// `cₖ = (−1)ᵏ(k−1)/(2k(k+1))`.
pub fn stirling_coeff(k: u32) -> Result<Rat, SeriesError> {
    if k < 2 {
        return Err(SeriesError::IndexTooSmall(k));
    }
    let k = BigInt::from(k);
    let mag = Rat::new(&k - 1, BigInt::from(2) * &k * (&k + 1));
    Ok(if k.bit(0) { -mag } else { mag })
}

/// A finite sum `Σ cₖ/nᵏ` with `k ≥ 2` and every stored `cₖ ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentSum {
    terms: BTreeMap<u32, Rat>,
}

impl LaurentSum {
    pub fn new(terms: impl IntoIterator<Item = (u32, Rat)>) -> Result<Self, SeriesError> {
        let mut out = BTreeMap::new();
        for (k, c) in terms {
            if k < 2 {
                return Err(SeriesError::IndexTooSmall(k));
            }
            if !c.is_zero() {
                out.insert(k, c);
            }
        }
        Ok(LaurentSum { terms: out })
    }

    pub fn terms(&self) -> &BTreeMap<u32, Rat> {
        &self.terms
    }

    pub fn get(&self, k: u32) -> Rat {
        self.terms.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn max_index(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn eval(&self, n: &Rat) -> Rat {
        let inv = n.recip();
        self.terms
            .iter()
            .map(|(&k, c)| c * num_traits::pow(inv.clone(), k as usize))
            .sum()
    }

    /// `Σ cₖ·n^{m−k} / n^m` over the common denominator `n^m`.
    pub fn to_ratfunc(&self) -> RatFunc {
        let Some(m) = self.max_index() else {
            return RatFunc::zero();
        };
        let num = self.terms.iter().fold(Poly::zero(), |acc, (&k, c)| {
            &acc + &Poly::monomial(c.clone(), (m - k) as usize)
        });
        RatFunc::new(num, Poly::monomial(Rat::one(), m as usize)).expect("nonzero monomial")
    }
}

/// `S_m(n) = Σ_{k=2}^{m} cₖ/nᵏ`.
pub fn partial_sum(m: u32) -> Result<LaurentSum, SeriesError> {
    if m < 2 {
        return Err(SeriesError::IndexTooSmall(m));
    }
    LaurentSum::new((2..=m).map(|k| (k, stirling_coeff(k).expect("k >= 2"))))
}

/// Coefficients of `f` in powers of `1/n`: the map `k ↦ [n⁻ᵏ]f` for all
/// `k ≤ order` (negative `k` for a growing `f`). Zero coefficients are
/// omitted.
pub fn expand_at_infinity(f: &RatFunc, order: i64) -> BTreeMap<i64, Rat> {
    let mut out = BTreeMap::new();
    let (Some(e), Some(d)) = (f.num().degree(), f.den().degree()) else {
        return out;
    };
    // f = n^{e−d} · N(x)/D(x) with x = 1/n and D(0) ≠ 0
    let lead = d as i64 - e as i64;
    let len = order - lead + 1;
    if len <= 0 {
        return out;
    }
    let len = len as usize;
    let reversed = |p: &Poly, deg: usize| -> Vec<Rat> {
        (0..len)
            .map(|i| if i <= deg { p.coeff(deg - i) } else { Rat::zero() })
            .collect()
    };
    let num = reversed(f.num(), e);
    let den = reversed(f.den(), d);
    let mut q: Vec<Rat> = Vec::with_capacity(len);
    for i in 0..len {
        let mut acc = num[i].clone();
        for j in 1..=i {
            acc -= &den[j] * &q[i - j];
        }
        q.push(acc / &den[0]);
    }
    for (i, c) in q.into_iter().enumerate() {
        if !c.is_zero() {
            out.insert(lead + i as i64, c);
        }
    }
    out
}

/// Coefficients `λⱼ` of the formal series `a(n) = Σ λⱼ n⁻ʲ` whose telescoping
/// difference `a(n) − a(n+1)` reproduces the Stirling series through
/// `n^{-(order+1)}`. Keys run over `1..=order`.
pub fn correction_coeffs(order: u32) -> BTreeMap<u32, Rat> {
    // [n^{-k}] (a(n) − a(n+1)) = Σ_{j<k} λⱼ (−1)^{k−j+1} C(k−1, j−1)
    let mut lambda: BTreeMap<u32, Rat> = BTreeMap::new();
    for k in 2..=order + 1 {
        let mut rest = stirling_coeff(k).expect("k >= 2");
        for (&j, l) in &lambda {
            let c = Rat::from_integer(binomial(BigInt::from(k - 1), BigInt::from(j - 1)));
            let term = l * c;
            if (k - j) % 2 == 1 {
                rest -= term;
            } else {
                rest += term;
            }
        }
        lambda.insert(k - 1, rest / int(i64::from(k) - 1));
    }
    lambda
}

/// The value `c*` at which a one-parameter family `a_c(n)` reproduces the
/// expansion of the ideal correction term through `target_order`.
///
/// The family must agree for every `c` below `target_order` and depend
/// affinely on `c` at `target_order`.
pub fn optimal_tail_constant<F, E>(family: F, target_order: u32) -> Result<Rat, SeriesError>
where
    F: Fn(&Rat) -> Result<RatFunc, E>,
    E: std::fmt::Display,
{
    let order = i64::from(target_order);
    let probes = [0i64, 1, 2, -3, 7];
    let mut expansions = Vec::with_capacity(probes.len());
    for &c in &probes {
        let f = family(&int(c)).map_err(|e| SeriesError::Template(e.to_string()))?;
        expansions.push(expand_at_infinity(&f, order));
    }
    let coeff = |ex: &BTreeMap<i64, Rat>, k: i64| ex.get(&k).cloned().unwrap_or_else(Rat::zero);
    let lowest = expansions.iter().filter_map(|e| e.keys().next().copied()).min();
    for k in lowest.unwrap_or(order)..order {
        let base = coeff(&expansions[0], k);
        if expansions.iter().any(|e| coeff(e, k) != base) {
            return Err(SeriesError::NotFirstOrder(k as u32));
        }
    }
    let g0 = coeff(&expansions[0], order);
    let slope = coeff(&expansions[1], order) - &g0;
    if slope.is_zero() {
        return Err(SeriesError::NoDependence(target_order));
    }
    for (e, &c) in expansions.iter().zip(&probes) {
        if coeff(e, order) != &g0 + &slope * int(c) {
            return Err(SeriesError::Nonlinear(target_order));
        }
    }
    let target = correction_coeffs(target_order)
        .remove(&target_order)
        .unwrap_or_else(Rat::zero);
    Ok((target - g0) / slope)
}

/// Builds a family from an expression template in which the letter `c`
/// stands for the unknown constant, e.g. `"1/(12n) - 1/(360n^3 + c n)"`.
pub fn template_family(template: &str) -> impl Fn(&Rat) -> Result<RatFunc, String> + '_ {
    move |c: &Rat| {
        let lit = format!("({}/{})", c.numer(), c.denom());
        let mut text = String::with_capacity(template.len() + 16);
        let mut chars = template.chars().peekable();
        while let Some(ch) = chars.next() {
            if ch != 'c' {
                text.push(ch);
                continue;
            }
            text.push_str(&lit);
            while chars.peek() == Some(&' ') {
                chars.next();
            }
            // juxtaposition such as "c n" or "c(…)" means multiplication
            if matches!(chars.peek(), Some('n' | '(')) {
                text.push('*');
            }
        }
        crate::expr::parse_ratfunc(&text).map_err(|e| e.to_string())
    }
}

/// Enclosure of `f(n) = (n+½)·ln(1+1/n) − 1`.
pub fn stirling_f(n: u64, prec: u32) -> Interval {
    let w = prec + 16;
    let n_big = BigInt::from(n);
    let ratio = Rat::new(&n_big + 1, n_big.clone());
    let ln = Interval::from_rat(&ratio, w).ln().expect("ratio > 0");
    let weight = Interval::from_rat(&(Rat::from_integer(n_big) + Rat::new(1.into(), 2.into())), w);
    (&(&weight * &ln) - &Interval::one(w)).with_prec(prec)
}

/// Checks `S_{2r−1}(n) ≤ f(n) ≤ S_{2r}(n)` at one working precision.
pub fn envelope_check(n: u64, r: u32, prec: u32) -> Verdict {
    assert!(n >= 1 && r >= 2, "envelope_check needs n >= 1, r >= 2");
    let x = int(n as i64);
    let lo = partial_sum(2 * r - 1).expect("m >= 3").eval(&x);
    let hi = partial_sum(2 * r).expect("m >= 4").eval(&x);
    let f = stirling_f(n, prec);
    let above_lo = f.compare_rat(&lo);
    let below_hi = f.compare_rat(&hi);
    use std::cmp::Ordering::*;
    match (above_lo, below_hi) {
        (Some(Less), _) | (_, Some(Greater)) => Verdict::Violated,
        (Some(Greater), Some(Less)) => Verdict::Holds,
        _ => Verdict::Undecidable,
    }
}

/// [`envelope_check`] with precision doubling up to `ceiling`.
pub fn envelope_check_adaptive(n: u64, r: u32, ceiling: u32) -> (Verdict, u32) {
    let decided = escalate(ceiling, |prec| {
        Ok::<_, ()>(match envelope_check(n, r, prec) {
            Verdict::Undecidable => None,
            v => Some(v),
        })
    })
    .expect("infallible");
    decided.unwrap_or((Verdict::Undecidable, ceiling))
}

/// Whether `|cₖ|/nᵏ` is positive and strictly decreasing in `k`, for
/// `k ∈ 2..=kmax`.
pub fn terms_decrease(n: u64, kmax: u32) -> bool {
    let x = int(n as i64);
    let mut prev: Option<Rat> = None;
    for k in 2..=kmax {
        let t = stirling_coeff(k).expect("k >= 2").abs() / num_traits::pow(x.clone(), k as usize);
        if prev.as_ref().is_some_and(|p| &t >= p) {
            return false;
        }
        prev = Some(t);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::expr::parse_ratfunc;

    #[test]
    fn coefficients() {
        assert_eq!(stirling_coeff(2), Ok(rat(1, 12)));
        assert_eq!(stirling_coeff(3), Ok(rat(-1, 12)));
        assert_eq!(stirling_coeff(12), Ok(rat(11, 312)));
        assert_eq!(stirling_coeff(1), Err(SeriesError::IndexTooSmall(1)));
    }

    #[test]
    fn partial_sums() {
        let s3 = partial_sum(3).unwrap();
        assert_eq!(s3.terms().len(), 2);
        assert_eq!(s3.get(2), rat(1, 12));
        assert_eq!(s3.get(3), rat(-1, 12));
        let s8 = partial_sum(8).unwrap();
        assert_eq!(s8.get(7), rat(-3, 56));
        assert_eq!(s8.get(8), rat(7, 144));
        assert_eq!(partial_sum(4).unwrap().eval(&int(1)), rat(3, 40));
        assert_eq!(
            s3.to_ratfunc(),
            RatFunc::new(Poly::from_ints(&[-1, 1]), Poly::from_ints(&[0, 0, 0, 12])).unwrap()
        );
    }

    #[test]
    fn expansion_of_two_term_family() {
        let f = parse_ratfunc("1/(12n) - 1/(360n^3+103n)").unwrap();
        let ex = expand_at_infinity(&f, 5);
        assert_eq!(ex.get(&1), Some(&rat(1, 12)));
        assert_eq!(ex.get(&3), Some(&rat(-1, 360)));
        assert_eq!(ex.get(&5), Some(&rat(103, 129600)));
        let g = parse_ratfunc("n^2 + 1/n").unwrap();
        let ex = expand_at_infinity(&g, 3);
        assert_eq!(ex.get(&-2), Some(&int(1)));
        assert_eq!(ex.get(&1), Some(&int(1)));
        assert_eq!(ex.len(), 2);
    }

    #[test]
    fn correction_series() {
        let l = correction_coeffs(9);
        assert_eq!(l[&1], rat(1, 12));
        assert_eq!(l[&2], Rat::zero());
        assert_eq!(l[&3], rat(-1, 360));
        assert_eq!(l[&5], rat(1, 1260));
        assert_eq!(l[&7], rat(-1, 1680));
        assert_eq!(l[&9], rat(1, 1188));
    }

    #[test]
    fn optimal_constants() {
        let cases = [
            ("1/(12n) - 1/(360n^3 + c n)", 5, rat(720, 7)),
            ("1/(12n) - 1/(360n^3) + 1/(1260n^5 + c n^3)", 7, int(945)),
            (
                "1/(12n) - 1/(360n^3) + 1/(1260n^5) - 1/(1680n^7 + c n^5)",
                9,
                rat(78400, 33),
            ),
        ];
        for (template, order, expected) in cases {
            assert_eq!(
                optimal_tail_constant(template_family(template), order),
                Ok(expected),
                "{template}"
            );
        }
        assert_eq!(
            optimal_tail_constant(template_family("1/(12n) - 1/(360n^3 + c n)"), 3),
            Err(SeriesError::NoDependence(3))
        );
        assert_eq!(
            optimal_tail_constant(template_family("1/(12n + c)"), 5),
            Err(SeriesError::NotFirstOrder(2))
        );
        assert_eq!(
            optimal_tail_constant(template_family("1/(12n) + 1/(n^5 + c^2*n^4)"), 6),
            Err(SeriesError::Nonlinear(6))
        );
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(envelope_check(1, 2, 64), Verdict::Holds);
        assert_eq!(envelope_check(10, 3, 64), Verdict::Holds);
        assert_eq!(envelope_check(5, 4, 64), Verdict::Holds);
        let (v, prec) = envelope_check_adaptive(1000, 6, 1 << 14);
        assert_eq!(v, Verdict::Holds);
        assert!(prec > 64);
    }
}
