use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::Rat;

/// Rounding direction for a single endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// Exact binary number `man · 2^exp`. Canonical: `man` is odd, or the value
/// is zero with `exp = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

fn shr_floor(x: &BigInt, s: u64) -> BigInt {
    if x.is_negative() {
        -shr_ceil(&-x, s)
    } else {
        x >> s
    }
}

fn shr_ceil(x: &BigInt, s: u64) -> BigInt {
    if x.is_negative() {
        -shr_floor(&-x, s)
    } else {
        let mask = (BigInt::one() << s) - 1;
        (x + mask) >> s
    }
}

fn div_round(num: &BigInt, den: &BigInt, dir: Round) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    match dir {
        Round::Down => q,
        Round::Up if r.is_zero() => q,
        Round::Up => q + 1,
    }
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Dyadic { man, exp: 0 };
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        Dyadic {
            man: man >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Self::new(v.into(), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    pub fn signum(&self) -> Ordering {
        self.man.sign_ordering()
    }

    /// `|self| < 2^top`; meaningless for zero.
    pub fn top(&self) -> i64 {
        self.exp + self.man.bits() as i64
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            man: self.man.clone(),
            exp: self.exp + k,
        }
    }

    /// Rounds to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let s = bits - prec as u64;
        let man = match dir {
            Round::Down => shr_floor(&self.man, s),
            Round::Up => shr_ceil(&self.man, s),
        };
        Dyadic::new(man, self.exp + s as i64)
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = self.exp.min(other.exp);
        (
            &self.man << (self.exp - e) as u64,
            &other.man << (other.exp - e) as u64,
            e,
        )
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    /// Rounded sum. When one operand lies far below the other's last
    /// significant bit it is replaced by a tiny value of the same sign,
    /// which yields the same directed rounding without materializing a huge
    /// aligned mantissa.
    pub fn add_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        let (big, small) = if self.is_zero() || other.is_zero() || self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        if !small.is_zero() && !big.is_zero() {
            let floor_exp = big.exp.min(big.top() - prec as i64 - 2);
            if small.top() < floor_exp - 1 {
                let tiny = Dyadic::new(
                    if small.is_negative() { -BigInt::one() } else { BigInt::one() },
                    floor_exp - 2,
                );
                return big.add(&tiny).round(prec, dir);
            }
        }
        big.add(small).round(prec, dir)
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &other.man, self.exp + other.exp)
    }

    /// `self / other` rounded to `prec` bits; `other` must be nonzero.
    pub fn div_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let shift = (prec as i64 + 2 + other.man.bits() as i64 - self.man.bits() as i64).max(0);
        let num = &self.man << shift as u64;
        let (num, den) = if other.man.is_negative() {
            (-num, -other.man.clone())
        } else {
            (num, other.man.clone())
        };
        let q = div_round(&num, &den, dir);
        Dyadic::new(q, self.exp - shift - other.exp).round(prec, dir)
    }

    /// Square root rounded to `prec` bits; `self` must be nonnegative.
    pub fn sqrt_round(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(!self.is_negative(), "square root of a negative number");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let want = 2 * prec as i64 + 4;
        let mut shift = (want - self.man.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.man << shift as u64;
        let s = m.sqrt();
        let s = if dir == Round::Up && &s * &s != m { s + 1 } else { s };
        Dyadic::new(s, (self.exp - shift) / 2).round(prec, dir)
    }

    pub fn from_rat(r: &Rat, prec: u32, dir: Round) -> Dyadic {
        if r.is_integer() {
            return Dyadic::from_int(r.to_integer()).round(prec, dir);
        }
        let (num, den) = (r.numer(), r.denom());
        let shift = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let (n, d) = if shift >= 0 {
            (num << shift as u64, den.clone())
        } else {
            (num.clone(), den << (-shift) as u64)
        };
        Dyadic::new(div_round(&n, &d, dir), -shift).round(prec, dir)
    }

    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.man << self.exp as u64)
        } else {
            Rat::new(self.man.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Nearest-ish `f64`, for estimates and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let keep = bits.min(60);
        let m = shr_floor(&self.man, (bits - keep) as u64).to_f64().unwrap_or(0.0);
        let e = self.exp + bits - keep;
        if e > 2000 {
            return if m > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if e < -2000 {
            return 0.0;
        }
        m * 2f64.powi(e as i32)
    }

    pub fn floor_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as u64
        } else {
            shr_floor(&self.man, (-self.exp) as u64)
        }
    }

    pub fn ceil_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as u64
        } else {
            shr_ceil(&self.man, (-self.exp) as u64)
        }
    }
}

trait SignOrd {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ordering(&self) -> Ordering {
        match self.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb || sa == Ordering::Equal {
            return sa.cmp(&sb);
        }
        let (ta, tb) = (self.top(), other.top());
        if ta != tb {
            let by_mag = ta.cmp(&tb);
            return if sa == Ordering::Greater { by_mag } else { by_mag.reverse() };
        }
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.man, self.exp)
    }
}
