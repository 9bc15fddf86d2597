//! Real-root tools for univariate polynomials: root upper bounds, exact
//! integer sign evaluation and Sturm sequences.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Poly, Rat};

/// Sign of `p(x)` at an integer, by Horner's scheme on integers when the
/// coefficients are integral.
pub fn sign_at(p: &Poly, x: &BigInt) -> Ordering {
    match p.to_integers() {
        Some(cs) => eval_int(&cs, x).sign_ordering(),
        None => p.eval(&Rat::from_integer(x.clone())).cmp(&Rat::zero()),
    }
}

pub fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// Smallest integer `t ≥ 0` with `tᵏ ≥ x` for rational `x ≥ 0`.
fn ceil_root(x: &Rat, k: u32) -> BigInt {
    let c = x.ceil().to_integer();
    if c <= BigInt::zero() {
        return BigInt::zero();
    }
    let mut t = c.nth_root(k);
    while Rat::from_integer(num_traits::pow(t.clone(), k as usize)) < *x {
        t += 1;
    }
    t
}

/// An integer `B` such that every real root of `p` is strictly less than
/// `B`. Takes the smaller of Cauchy's bound `1 + max|aᵢ/a_d|` and Fujiwara's
/// bound `2·max|a_{d−i}/a_d|^{1/i}`. Returns `None` for constant or zero `p`.
pub fn root_upper_bound(p: &Poly) -> Option<BigInt> {
    let d = p.degree().filter(|&d| d > 0)?;
    let lead = p.leading().abs();
    let cs = p.coeffs();
    let cauchy = cs[..d]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rat::zero);
    let cauchy: BigInt = (cauchy + Rat::one()).floor().to_integer() + 1;
    let fujiwara = (1..=d)
        .map(|i| {
            let mut ratio = cs[d - i].abs() / &lead;
            if i == d {
                ratio /= Rat::from_integer(BigInt::from(2));
            }
            ceil_root(&ratio, i as u32)
        })
        .max()
        .unwrap_or_else(BigInt::zero)
        * 2
        + 1;
    Some(cauchy.min(fujiwara))
}

/// Sturm sequence `p, p', −rem(p, p'), …` over the rationals.
pub fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone()];
    if p.is_zero() {
        return chain;
    }
    let mut next = p.derivative();
    while !next.is_zero() {
        let prev = chain.last().expect("chain is nonempty");
        let (_, rem) = prev.div_rem(&next).expect("nonzero divisor");
        chain.push(next);
        next = -&rem;
    }
    chain
}

fn sign_changes<I: Iterator<Item = Ordering>>(signs: I) -> usize {
    let mut last = Ordering::Equal;
    let mut changes = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign(x: &Rat) -> Ordering {
    x.cmp(&Rat::zero())
}

/// Number of distinct real roots of `p` in the half-open interval `(a, ∞)`.
pub fn count_roots_above(p: &Poly, a: &Rat) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let chain = sturm_chain(p);
    let at_a = sign_changes(chain.iter().map(|q| sign(&q.eval(a))));
    let at_inf = sign_changes(chain.iter().map(|q| sign(&q.leading())));
    at_a - at_inf
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn count_roots_between(p: &Poly, a: &Rat, b: &Rat) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let chain = sturm_chain(p);
    let va = sign_changes(chain.iter().map(|q| sign(&q.eval(a))));
    let vb = sign_changes(chain.iter().map(|q| sign(&q.eval(b))));
    va - vb
}

/// Required sign of a polynomial at integer points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignCondition {
    Positive,
    Negative,
    NonNegative,
    NonPositive,
}

impl SignCondition {
    pub fn accepts(self, s: Ordering) -> bool {
        match self {
            SignCondition::Positive => s == Ordering::Greater,
            SignCondition::Negative => s == Ordering::Less,
            SignCondition::NonNegative => s != Ordering::Less,
            SignCondition::NonPositive => s != Ordering::Greater,
        }
    }

    /// Whether a polynomial with this leading-coefficient sign eventually
    /// satisfies the condition.
    pub fn eventually_accepts(self, leading: Ordering) -> bool {
        match self {
            SignCondition::Positive | SignCondition::NonNegative => leading == Ordering::Greater,
            SignCondition::Negative | SignCondition::NonPositive => leading == Ordering::Less,
        }
    }
}

/// Largest integer `x` in `[from, to]` at which `p(x)` violates `cond`.
pub fn last_violation(
    p: &Poly,
    cond: SignCondition,
    from: &BigInt,
    to: &BigInt,
) -> Option<BigInt> {
    let ints = p.to_integers();
    let mut x = to.clone();
    while &x >= from {
        let s = match &ints {
            Some(cs) => eval_int(cs, &x).sign_ordering(),
            None => sign_at(p, &x),
        };
        if !cond.accepts(s) {
            return Some(x);
        }
        x -= BigInt::one();
    }
    None
}

/// Whether `p(x)` satisfies `cond` at every integer `x ≥ from`, established
/// by a root upper bound plus exact evaluation below it.
pub fn holds_for_all_integers_from(p: &Poly, cond: SignCondition, from: &BigInt) -> bool {
    let Some(d) = p.degree() else {
        return cond.accepts(Ordering::Equal);
    };
    if d == 0 {
        return cond.accepts(sign(&p.leading()));
    }
    if !cond.eventually_accepts(sign(&p.leading())) {
        return false;
    }
    let bound = root_upper_bound(p).expect("degree ≥ 1");
    if &bound < from {
        return true;
    }
    last_violation(p, cond, from, &bound).is_none()
}

/// Integer polynomial helper used for the sign claims.
pub fn content_of_ints(coeffs: &[BigInt]) -> BigInt {
    coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}
