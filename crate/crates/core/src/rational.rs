//! Exact rational numbers.
//!
//! Everything in this crate (coordinates, map values, slopes, rotation
//! numbers) is a [`Rational`]. The type is an alias for
//! [`num_rational::BigRational`], which keeps values in lowest terms with a
//! positive denominator.
//!
//! Text form is `"num/den"` (or just `"num"` for integers), matching the map
//! spec and report formats.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `"a/b"`, `"a"` or `"-a/b"`. Whitespace around the parts is ignored.
pub fn parse(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form, `"num/den"` in lowest terms or `"num"` for integers.
pub fn format(value: &Rational) -> String {
    value.to_string()
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn half() -> Rational {
    ratio(1, 2)
}

/// Largest integer not exceeding `x`.
pub fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Splits `x` as `k + t` with `k` an integer and `t` in `[0, 1)`.
pub fn split_integer(x: &Rational) -> (BigInt, Rational) {
    let k = floor(x);
    let t = x - Rational::from_integer(k.clone());
    (k, t)
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Lossy conversion for plotting and `--approx` output only.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Total number of bits in numerator and denominator; a size measure used by
/// iteration guards.
pub fn bit_size(x: &Rational) -> u64 {
    x.numer().abs().bits() + x.denom().bits()
}

/// Unique root of the affine function through `(x0, y0)` and `(x1, y1)` at
/// level `level`, if the level is attained and the function is not constant.
pub fn solve_linear(
    x0: &Rational,
    y0: &Rational,
    x1: &Rational,
    y1: &Rational,
    level: &Rational,
) -> Option<Rational> {
    if y0 == y1 {
        return None;
    }
    let lo = y0.min(y1);
    let hi = y0.max(y1);
    if level < lo || level > hi {
        return None;
    }
    Some(x0 + (x1 - x0) * (level - y0) / (y1 - y0))
}

/// Value at `x` of the affine function through `(x0, y0)` and `(x1, y1)`.
pub fn interpolate(
    x0: &Rational,
    y0: &Rational,
    x1: &Rational,
    y1: &Rational,
    x: &Rational,
) -> Rational {
    if x == x0 {
        return y0.clone();
    }
    if x == x1 {
        return y1.clone();
    }
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

/// Serde adapters storing rationals as `"num/den"` strings.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::super::Rational;
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&super::super::format(v))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts
                .iter()
                .map(|t| super::super::parse(t).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use super::super::Rational;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => s.serialize_some(&super::super::format(v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Option<Rational>, D::Error> {
            let text = Option::<String>::deserialize(d)?;
            text.map(|t| super::super::parse(&t).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}
