//! Exact arithmetic kernel: rationals, dense univariate polynomials and
//! normalized rational functions in the variable `n`.

mod poly;
mod rat;
mod ratfunc;
pub mod roots;

pub use poly::Poly;
pub use rat::{int, rat, rat_arith, terminating_decimal, ArithOp, Rat};
pub use ratfunc::RatFunc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function has an identically zero denominator")]
    ZeroDenominator,
    #[error("pole at n = {0}")]
    Pole(Rat),
    #[error("invalid rational literal {0:?}")]
    InvalidLiteral(String),
}

/// Serde adapters that write exact quantities as decimal strings.
pub mod serde_str {
    use super::Rat;
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize_rat<S: Serializer>(value: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize_rat<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let text = String::deserialize(d)?;
        text.parse::<Rat>().map_err(D::Error::custom)
    }

    pub fn serialize_ints<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(|v| v.to_string()))
    }

    pub fn deserialize_ints<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| t.parse::<BigInt>().map_err(D::Error::custom))
            .collect()
    }

    /// `#[serde(with = ...)]` form of [`serialize_rat`] / [`deserialize_rat`].
    pub mod rat_str {
        pub use super::deserialize_rat as deserialize;
        pub use super::serialize_rat as serialize;
    }

    /// `u64` counters written as decimal strings, like every other exact
    /// integer in serialized output.
    pub mod u64_str {
        use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(value: &u64, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&value.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
            String::deserialize(d)?.parse().map_err(D::Error::custom)
        }
    }

    pub mod u32_str {
        use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(value: &u32, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&value.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u32, D::Error> {
            String::deserialize(d)?.parse().map_err(D::Error::custom)
        }
    }
}
