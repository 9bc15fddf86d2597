//! The proof engine.
//!
//! For a correction term `a(n)` the bound `n! ≷ √(2πn)(n/e)ⁿ·e^{a(n)}` holds
//! for all `n ≥ N*` once the single-step inequality
//!
//! ```text
//! S_m(n) − (a(n) − a(n+1))  ≥ 0   (lower, m = 2r−1)
//!                           ≤ 0   (upper, m = 2r)
//! ```
//!
//! holds for all integers `n ≥ N*`: the partial sums of the Stirling series
//! bracket `(n+½)ln(1+1/n) − 1`, so the ratio `n!eⁿ/n^{n+½}·e^{−a(n)}` is
//! monotone and converges to `√(2π)`. Clearing the (certified positive)
//! denominator turns the inequality into an integer polynomial sign
//! condition. The integers in `[claim_from, N*)` are settled directly.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exact::roots::{
    count_roots_above, holds_for_all_integers_from, last_violation, root_upper_bound, sign_at,
    SignCondition,
};
use crate::exact::{int, serde_str, Poly, Rat, RatFunc};
use crate::precision::{escalate, strict_compare, PrecisionError, Verdict, DEFAULT_CEILING};
use crate::series::{partial_sum, stirling_f};
use crate::Direction;

pub const SCHEMA_VERSION: u32 = 1;

/// Stage of [`certify_bound`] at which a failure occurred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Spec,
    Derivation,
    Threshold,
    BaseCases,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("invalid bound: {0}")]
    Spec(String),
    #[error("derivation failed: {0}")]
    Derivation(String),
    #[error("eventual sign not certified: {reason}")]
    Threshold {
        reason: String,
        counterexample: Option<u64>,
    },
    #[error("bound fails at n = {n}")]
    Refuted { n: u64 },
    #[error("comparison at n = {n} undecided at {ceiling} bits")]
    Undecidable { n: u64, ceiling: u32 },
}

impl CertifyError {
    pub fn stage(&self) -> Stage {
        match self {
            CertifyError::Spec(_) => Stage::Spec,
            CertifyError::Derivation(_) => Stage::Derivation,
            CertifyError::Threshold { .. } => Stage::Threshold,
            CertifyError::Refuted { .. } | CertifyError::Undecidable { .. } => Stage::BaseCases,
        }
    }

    /// An integer at which the bound was shown to fail, if one was found.
    pub fn counterexample(&self) -> Option<u64> {
        match self {
            CertifyError::Threshold { counterexample, .. } => *counterexample,
            CertifyError::Refuted { n } => Some(*n),
            _ => None,
        }
    }
}

fn from_precision(e: PrecisionError) -> CertifyError {
    match e {
        PrecisionError::Undecidable { n, ceiling } => CertifyError::Undecidable { n, ceiling },
        PrecisionError::Pole(n) => CertifyError::Spec(format!("correction term has a pole at n = {n}")),
        other => CertifyError::Derivation(other.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Precision ceiling (bits) for base-case comparisons.
    pub prec_ceiling: u32,
    /// How far past `scan_from` the threshold search may go.
    pub threshold_ceiling: u64,
    /// How many integers from `claim_from` are tried when hunting for a
    /// counterexample after the threshold stage fails.
    pub counterexample_scan: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            prec_ceiling: DEFAULT_CEILING,
            threshold_ceiling: 1_000_000,
            counterexample_scan: 1000,
        }
    }
}

/// A candidate bound `n! ≷ √(2πn)(n/e)ⁿ·e^{a(n)}` for `n ≥ claim_from`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundSpec {
    name: String,
    direction: Direction,
    a: RatFunc,
    #[serde(with = "serde_str::u32_str")]
    r: u32,
    #[serde(with = "serde_str::u64_str")]
    claim_from: u64,
}

impl BoundSpec {
    /// Validates that `a → 0`, that `a` has no pole and is positive at
    /// every integer `n ≥ claim_from`, and that `r ≥ 2`.
    pub fn new(
        name: impl Into<String>,
        direction: Direction,
        a: RatFunc,
        r: u32,
        claim_from: u64,
    ) -> Result<Self, CertifyError> {
        if r < 2 {
            return Err(CertifyError::Spec(format!("truncation parameter r = {r} is below 2")));
        }
        if claim_from < 1 {
            return Err(CertifyError::Spec("claims start at n >= 1".into()));
        }
        if !a.vanishes_at_infinity() {
            return Err(CertifyError::Spec(format!("a(n) = {a} does not tend to 0")));
        }
        let from = BigInt::from(claim_from);
        if let Some(n) = integer_zero_from(a.den(), &from) {
            return Err(CertifyError::Spec(format!("a(n) has a pole at n = {n}")));
        }
        if !holds_for_all_integers_from(&(a.num() * a.den()), SignCondition::Positive, &from) {
            return Err(CertifyError::Spec(format!(
                "a(n) = {a} is not positive for every n >= {claim_from}"
            )));
        }
        Ok(BoundSpec {
            name: name.into(),
            direction,
            a,
            r,
            claim_from,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn a(&self) -> &RatFunc {
        &self.a
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn claim_from(&self) -> u64 {
        self.claim_from
    }

    /// Truncation index of the Stirling series used for this direction.
    pub fn truncation(&self) -> u32 {
        match self.direction {
            Direction::Lower => 2 * self.r - 1,
            Direction::Upper => 2 * self.r,
        }
    }
}

impl<'de> Deserialize<'de> for BoundSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            name: String,
            direction: Direction,
            a: RatFunc,
            #[serde(with = "serde_str::u32_str")]
            r: u32,
            #[serde(with = "serde_str::u64_str")]
            claim_from: u64,
        }
        let Repr {
            name,
            direction,
            a,
            r,
            claim_from,
        } = Repr::deserialize(d)?;
        BoundSpec::new(name, direction, a, r, claim_from).map_err(serde::de::Error::custom)
    }
}

/// Smallest integer `n ≥ from` with `p(n) = 0`, if any.
fn integer_zero_from(p: &Poly, from: &BigInt) -> Option<BigInt> {
    let bound = root_upper_bound(p)?;
    let mut n = from.clone();
    while n < bound {
        if sign_at(p, &n) == Ordering::Equal {
            return Some(n);
        }
        n += 1;
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RequiredSign {
    #[serde(rename = ">=0")]
    NonNegative,
    #[serde(rename = "<=0")]
    NonPositive,
}

impl RequiredSign {
    pub fn for_direction(direction: Direction) -> Self {
        match direction {
            Direction::Lower => RequiredSign::NonNegative,
            Direction::Upper => RequiredSign::NonPositive,
        }
    }

    pub fn condition(self) -> SignCondition {
        match self {
            RequiredSign::NonNegative => SignCondition::NonNegative,
            RequiredSign::NonPositive => SignCondition::NonPositive,
        }
    }
}

/// An integer polynomial with a certified sign on all integers
/// `n ≥ threshold`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignClaim {
    #[serde(
        serialize_with = "serialize_poly",
        deserialize_with = "deserialize_poly"
    )]
    pub p: Poly,
    pub required_sign: RequiredSign,
    #[serde(with = "serde_str::u64_str")]
    pub threshold: u64,
}

fn serialize_poly<S: Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    let ints = p
        .to_integers()
        .ok_or_else(|| serde::ser::Error::custom("sign polynomial is not integral"))?;
    serde_str::serialize_ints(&ints, s)
}

fn deserialize_poly<'de, D: Deserializer<'de>>(d: D) -> Result<Poly, D::Error> {
    Ok(Poly::from_ints(&serde_str::deserialize_ints(d)?))
}

/// Output of [`derive_difference`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    /// `D(n) = S_m(n) − (a(n) − a(n+1))`.
    pub difference: RatFunc,
    /// Primitive integer polynomial with the sign of `D(n)` on the claimed
    /// range.
    pub poly: Poly,
    pub required_sign: RequiredSign,
}

/// Builds `D(n)` and its sign polynomial, certifying that the denominator
/// of `D` is positive at every integer `n ≥ claim_from`.
pub fn derive_difference(spec: &BoundSpec) -> Result<Derivation, CertifyError> {
    let s = partial_sum(spec.truncation())
        .map_err(|e| CertifyError::Derivation(e.to_string()))?
        .to_ratfunc();
    let step = &spec.a - &spec.a.shift();
    let difference = &s - &step;
    let from = BigInt::from(spec.claim_from);
    // canonical denominators have a positive leading coefficient, so the
    // sign for large n is +; it must not change anywhere on the range
    if !holds_for_all_integers_from(difference.den(), SignCondition::Positive, &from) {
        return Err(CertifyError::Derivation(format!(
            "denominator {} is not positive for every n >= {}",
            difference.den(),
            spec.claim_from
        )));
    }
    Ok(Derivation {
        poly: difference.num().primitive(),
        difference,
        required_sign: RequiredSign::for_direction(spec.direction),
    })
}

/// Certified eventual-sign threshold together with its cross-check data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Threshold {
    pub threshold: u64,
    /// Integer strictly above every real root of `p`.
    pub root_bound: Option<BigInt>,
    /// Distinct real roots of `p` in `(threshold, ∞)` by Sturm's theorem.
    pub roots_above: usize,
}

/// The least `N* ≥ scan_from` such that `p` satisfies `required` at every
/// integer `n ≥ N*`.
///
/// Beyond a root upper bound `B` the sign is that of the leading
/// coefficient; integers in `[scan_from, B]` are evaluated exactly. A Sturm
/// count over `(N*, ∞)` must independently report no roots.
pub fn eventual_sign_threshold(
    p: &Poly,
    required: RequiredSign,
    scan_from: u64,
    ceiling: u64,
) -> Result<Threshold, CertifyError> {
    let cond = required.condition();
    let fail = |reason: String| CertifyError::Threshold {
        reason,
        counterexample: None,
    };
    let Some(degree) = p.degree() else {
        return Ok(Threshold {
            threshold: scan_from,
            root_bound: None,
            roots_above: 0,
        });
    };
    let leading = p.leading().cmp(&Rat::zero());
    if degree == 0 {
        return if cond.accepts(leading) {
            Ok(Threshold {
                threshold: scan_from,
                root_bound: None,
                roots_above: 0,
            })
        } else {
            Err(fail("constant sign polynomial has the wrong sign".into()))
        };
    }
    if !cond.eventually_accepts(leading) {
        return Err(fail(format!(
            "leading coefficient of {p} has the wrong sign, so the bound cannot hold eventually"
        )));
    }
    let bound = root_upper_bound(p).expect("degree >= 1");
    let from = BigInt::from(scan_from);
    if bound > &from + BigInt::from(ceiling) {
        return Err(fail(format!(
            "root bound {bound} lies more than {ceiling} past n = {scan_from}"
        )));
    }
    let threshold = match last_violation(p, cond, &from, &bound) {
        Some(n) => u64::try_from(n + 1).expect("below the ceiling"),
        None => scan_from,
    };
    let roots_above = count_roots_above(p, &int(threshold as i64));
    if roots_above != 0 {
        return Err(fail(format!(
            "Sturm count reports {roots_above} root(s) of {p} above n = {threshold}"
        )));
    }
    Ok(Threshold {
        threshold,
        root_bound: Some(bound),
        roots_above,
    })
}

/// One settled base case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseCase {
    #[serde(with = "serde_str::u64_str")]
    pub n: u64,
    pub verdict: Verdict,
    /// Working precision (bits) at which the comparison became decisive.
    pub precision: u32,
}

/// Decides the bound directly at every `n` in `[from, to_exclusive)`,
/// in parallel; the result is ordered by `n`.
pub fn verify_base_cases(
    spec: &BoundSpec,
    from: u64,
    to_exclusive: u64,
    prec_ceiling: u32,
) -> Result<Vec<BaseCase>, CertifyError> {
    (from.max(1)..to_exclusive)
        .into_par_iter()
        .map(|n| {
            let d = strict_compare(n, &spec.a, spec.direction, prec_ceiling)
                .map_err(from_precision)?;
            Ok(BaseCase {
                n,
                verdict: if d.holds {
                    Verdict::Holds
                } else {
                    Verdict::Violated
                },
                precision: d.precision,
            })
        })
        .collect()
}

/// A self-contained record establishing one bound for all `n ≥ valid_from`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub spec: BoundSpec,
    pub claim: SignClaim,
    pub base_cases: Vec<BaseCase>,
    #[serde(with = "serde_str::u64_str")]
    pub valid_from: u64,
    /// `D(n)` before its denominator was cleared.
    pub derivation_transcript: RatFunc,
}

/// Runs derivation, threshold certification and base cases end to end.
pub fn certify_bound(spec: &BoundSpec, opts: &CertifyOptions) -> Result<Certificate, CertifyError> {
    let derivation = derive_difference(spec)?;
    let threshold = match eventual_sign_threshold(
        &derivation.poly,
        derivation.required_sign,
        spec.claim_from,
        opts.threshold_ceiling,
    ) {
        Ok(t) => t.threshold,
        Err(CertifyError::Threshold { reason, .. }) => {
            return Err(CertifyError::Threshold {
                reason,
                counterexample: find_counterexample(spec, opts),
            })
        }
        Err(e) => return Err(e),
    };
    let base_cases = verify_base_cases(spec, spec.claim_from, threshold, opts.prec_ceiling)?;
    if let Some(bad) = base_cases.iter().find(|b| b.verdict != Verdict::Holds) {
        return Err(CertifyError::Refuted { n: bad.n });
    }
    Ok(Certificate {
        schema_version: SCHEMA_VERSION,
        spec: spec.clone(),
        claim: SignClaim {
            p: derivation.poly,
            required_sign: derivation.required_sign,
            threshold,
        },
        base_cases,
        valid_from: spec.claim_from,
        derivation_transcript: derivation.difference,
    })
}

/// First `n` in the scan window at which the bound provably fails.
fn find_counterexample(spec: &BoundSpec, opts: &CertifyOptions) -> Option<u64> {
    let end = spec.claim_from.saturating_add(opts.counterexample_scan);
    (spec.claim_from..end).find(|&n| {
        matches!(
            strict_compare(n, &spec.a, spec.direction, opts.prec_ceiling),
            Ok(d) if !d.holds
        )
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("certificate is inconsistent: {0}")]
    Inconsistent(String),
    #[error("re-derivation differs in {0}")]
    Mismatch(&'static str),
    #[error(transparent)]
    Certify(#[from] CertifyError),
}

impl Certificate {
    /// Checks the structural invariants without recomputing anything.
    pub fn check(&self) -> Result<(), ReplayError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(ReplayError::Schema(self.schema_version));
        }
        let bad = |msg: String| Err(ReplayError::Inconsistent(msg));
        if self.valid_from != self.spec.claim_from {
            return bad("valid_from differs from the claimed start".into());
        }
        let expected: Vec<u64> = (self.valid_from..self.claim.threshold).collect();
        let got: Vec<u64> = self.base_cases.iter().map(|b| b.n).collect();
        if expected != got {
            return bad("base cases do not cover [valid_from, threshold)".into());
        }
        if let Some(b) = self.base_cases.iter().find(|b| b.verdict != Verdict::Holds) {
            return bad(format!("base case n = {} does not hold", b.n));
        }
        if self.claim.p.content() != Rat::from_integer(1.into()) {
            return bad("sign polynomial is not primitive".into());
        }
        if self.derivation_transcript.num().primitive() != self.claim.p {
            return bad("sign polynomial does not match the transcript".into());
        }
        Ok(())
    }

    /// Re-derives everything from the spec and compares bit for bit.
    pub fn replay(&self, opts: &CertifyOptions) -> Result<(), ReplayError> {
        self.check()?;
        let derivation = derive_difference(&self.spec)?;
        if derivation.difference != self.derivation_transcript {
            return Err(ReplayError::Mismatch("derivation transcript"));
        }
        if derivation.poly != self.claim.p || derivation.required_sign != self.claim.required_sign {
            return Err(ReplayError::Mismatch("sign claim"));
        }
        let t = eventual_sign_threshold(
            &derivation.poly,
            derivation.required_sign,
            self.spec.claim_from,
            opts.threshold_ceiling,
        )?;
        if t.threshold != self.claim.threshold {
            return Err(ReplayError::Mismatch("threshold"));
        }
        let cases = verify_base_cases(
            &self.spec,
            self.valid_from,
            self.claim.threshold,
            opts.prec_ceiling,
        )?;
        if cases.iter().map(|c| (c.n, c.verdict)).ne(self.base_cases.iter().map(|c| (c.n, c.verdict))) {
            return Err(ReplayError::Mismatch("base cases"));
        }
        Ok(())
    }
}

/// Whether `Tₙ = n!eⁿ/n^{n+½}·e^{−a(n)}` is nonincreasing (lower) or
/// nondecreasing (upper) for `n` in `[lo, hi]`.
///
/// `ln Tₙ − ln Tₙ₊₁ = (n+½)ln(1+1/n) − 1 − (a(n) − a(n+1))`, so each step
/// is one strict interval comparison against an exact rational.
pub fn ratio_monotone_check(
    a: &RatFunc,
    direction: Direction,
    (lo, hi): (u64, u64),
    prec_ceiling: u32,
) -> Result<Verdict, CertifyError> {
    let steps: Vec<Result<bool, CertifyError>> = (lo.max(1)..hi)
        .into_par_iter()
        .map(|n| {
            let x = int(n as i64);
            let an = a.eval(&x).map_err(|_| from_precision(PrecisionError::Pole(n)))?;
            let an1 = a
                .eval(&(&x + int(1)))
                .map_err(|_| from_precision(PrecisionError::Pole(n + 1)))?;
            let step = an - an1;
            let decided = escalate(prec_ceiling, |prec| {
                Ok::<_, ()>(stirling_f(n, prec).compare_rat(&step))
            })
            .expect("infallible");
            let (ord, _) = decided.ok_or(CertifyError::Undecidable {
                n,
                ceiling: prec_ceiling,
            })?;
            Ok(match direction {
                Direction::Lower => ord == Ordering::Greater,
                Direction::Upper => ord == Ordering::Less,
            })
        })
        .collect();
    let mut verdict = Verdict::Holds;
    for s in steps {
        if !s? {
            verdict = Verdict::Violated;
        }
    }
    Ok(verdict)
}

/// Interval check of a certificate's claim at every `n` in
/// `[valid_from, valid_from + count]`; returns the integers where the
/// comparison disagrees with the certified direction.
pub fn spot_check(cert: &Certificate, count: u64, prec_ceiling: u32) -> Result<Vec<u64>, CertifyError> {
    let from = cert.valid_from;
    let results: Vec<Result<Option<u64>, CertifyError>> = (from..=from + count)
        .into_par_iter()
        .map(|n| {
            let d = strict_compare(n, cert.spec.a(), cert.spec.direction(), prec_ceiling)
                .map_err(from_precision)?;
            Ok((!d.holds).then_some(n))
        })
        .collect();
    let mut bad = Vec::new();
    for r in results {
        if let Some(n) = r? {
            bad.push(n);
        }
    }
    Ok(bad)
}

/// Smallest `n` in `[from, to]` at which `lower(n) ≥ upper(n)`, i.e. where a
/// lower/upper pair of correction terms would contradict each other.
pub fn duality_violation(lower: &RatFunc, upper: &RatFunc, from: u64, to: u64) -> Option<u64> {
    (from..=to).find(|&n| {
        let x = int(n as i64);
        match (lower.eval(&x), upper.eval(&x)) {
            (Ok(l), Ok(u)) => l >= u,
            _ => true,
        }
    })
}

/// `D(n)` has the required sign at `n` (exact rational evaluation).
pub fn difference_sign_ok(derivation: &Derivation, n: u64) -> bool {
    match derivation.difference.eval(&int(n as i64)) {
        Ok(v) => match derivation.required_sign {
            RequiredSign::NonNegative => !v.is_negative(),
            RequiredSign::NonPositive => !v.is_positive(),
        },
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_ratfunc;

    fn spec(name: &str, dir: Direction, a: &str, r: u32, from: u64) -> BoundSpec {
        BoundSpec::new(name, dir, parse_ratfunc(a).unwrap(), r, from).unwrap()
    }

    #[test]
    fn linear_threshold() {
        let t = eventual_sign_threshold(&Poly::from_ints(&[-5, 1]), RequiredSign::NonNegative, 1, 1000)
            .unwrap();
        assert_eq!(t.threshold, 5);
        assert_eq!(t.roots_above, 0);
        let err = eventual_sign_threshold(&Poly::from_ints(&[5, -1]), RequiredSign::NonNegative, 1, 1000);
        assert!(matches!(err, Err(CertifyError::Threshold { .. })));
    }

    #[test]
    fn spec_validation() {
        let bad = |a: &str, from| BoundSpec::new("x", Direction::Lower, parse_ratfunc(a).unwrap(), 2, from);
        assert!(bad("1/(n-3)", 1).is_err());
        assert!(bad("1/(n-3)", 4).is_ok());
        assert!(bad("n/(n+1)", 1).is_err());
        assert!(bad("1/(2n-21)", 11).is_ok());
        assert!(bad("1/(n^2-30)", 1).is_err());
        assert!(BoundSpec::new("x", Direction::Lower, parse_ratfunc("1/n").unwrap(), 1, 1).is_err());
    }

    #[test]
    fn tiny_placeholder_lower() {
        let s = spec("tiny", Direction::Lower, "1/(10^100*n)", 2, 1);
        let d = derive_difference(&s).unwrap();
        assert_eq!(d.required_sign, RequiredSign::NonNegative);
        assert!(d.poly.leading().is_positive());
        // S₃(1) = 0, so the telescoping term wins at n = 1 only
        assert!(!difference_sign_ok(&d, 1));
        for n in 2..50 {
            assert!(difference_sign_ok(&d, n));
        }
    }

    #[test]
    fn robbins_lower_certifies() {
        let s = spec("robbins", Direction::Lower, "1/(12n+1)", 2, 1);
        let cert = certify_bound(&s, &CertifyOptions::default()).unwrap();
        cert.check().unwrap();
        assert_eq!(cert.base_cases.len() as u64, cert.claim.threshold - 1);
    }

    #[test]
    fn too_large_lower_term_fails_at_threshold() {
        let s = spec("eleven", Direction::Lower, "1/(11n)", 2, 1);
        let err = certify_bound(&s, &CertifyOptions::default()).unwrap_err();
        assert_eq!(err.stage(), Stage::Threshold);
        assert_eq!(err.counterexample(), Some(1));
    }

    #[test]
    fn ratio_monotonicity() {
        let zero = RatFunc::zero();
        let opts = DEFAULT_CEILING;
        assert_eq!(ratio_monotone_check(&zero, Direction::Lower, (1, 50), opts), Ok(Verdict::Holds));
        let inv = parse_ratfunc("1/n").unwrap();
        assert_eq!(ratio_monotone_check(&inv, Direction::Upper, (1, 50), opts), Ok(Verdict::Holds));
        assert_eq!(ratio_monotone_check(&inv, Direction::Lower, (1, 50), opts), Ok(Verdict::Violated));
        let robbins = parse_ratfunc("1/(12n+1)").unwrap();
        assert_eq!(
            ratio_monotone_check(&robbins, Direction::Lower, (1, 100), opts),
            Ok(Verdict::Holds)
        );
    }

    #[test]
    fn json_round_trip() {
        let s = spec("robbins", Direction::Lower, "1/(12n+1)", 2, 1);
        let cert = certify_bound(&s, &CertifyOptions::default()).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        assert!(!json.contains('.'), "no floating point in {json}");
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        back.replay(&CertifyOptions::default()).unwrap();
    }
}
