use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Poly;
use super::rat::Rat;
use super::ExactError;

/// Rational function `num(n)/den(n)` in canonical form:
///
/// * `gcd(num, den) = 1` over the rationals,
/// * all coefficients of `num` and `den` are integers with no common factor,
/// * `den` has a positive leading coefficient,
/// * zero is `0/1`.
///
/// With these rules two equal rational functions have identical
/// representations, so structural equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (
                num.div_rem(&g).expect("gcd is nonzero").0,
                den.div_rem(&g).expect("gcd is nonzero").0,
            )
        };
        let mut lcm = BigInt::one();
        let mut gcd = BigInt::zero();
        for c in num.coeffs().iter().chain(den.coeffs()) {
            lcm = lcm.lcm(c.denom());
        }
        let lcm = Rat::from_integer(lcm);
        num = num.scale(&lcm);
        den = den.scale(&lcm);
        for c in num.coeffs().iter().chain(den.coeffs()) {
            gcd = gcd.gcd(c.numer());
        }
        let mut k = Rat::from_integer(gcd).recip();
        if den.leading().is_negative() {
            k = -k;
        }
        Ok(RatFunc {
            num: num.scale(&k),
            den: den.scale(&k),
        })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::new(p, Poly::one()).expect("unit denominator")
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var() -> Self {
        Self::from_poly(Poly::var())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when `deg(num) < deg(den)`, i.e. the function tends to zero.
    pub fn vanishes_at_infinity(&self) -> bool {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => true,
            (Some(a), Some(b)) => a < b,
            (Some(_), None) => unreachable!("denominator is never zero"),
        }
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat, ExactError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ExactError::Pole(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }

    /// `f(n + 1)`.
    pub fn shift(&self) -> RatFunc {
        Self::new(self.num.shift(), self.den.shift()).expect("shift keeps den nonzero")
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, k: u32) -> RatFunc {
        (0..k).fold(Self::constant(Rat::one()), |acc, _| &acc * self)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("product of nonzero denominators")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("product of nonzero denominators")
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    #[serde(
        serialize_with = "super::serde_str::serialize_ints",
        deserialize_with = "super::serde_str::deserialize_ints"
    )]
    num: Vec<BigInt>,
    #[serde(
        serialize_with = "super::serde_str::serialize_ints",
        deserialize_with = "super::serde_str::deserialize_ints"
    )]
    den: Vec<BigInt>,
}

impl Serialize for RatFunc {
    /// Coefficient lists in ascending degree, as decimal strings.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFuncRepr {
            num: self.num.to_integers().expect("canonical form is integral"),
            den: self.den.to_integers().expect("canonical form is integral"),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = RatFuncRepr::deserialize(d)?;
        RatFunc::new(Poly::from_ints(&repr.num), Poly::from_ints(&repr.den))
            .map_err(serde::de::Error::custom)
    }
}
