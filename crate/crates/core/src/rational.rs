//! Exact rationals and their canonical `"p/q"` text form.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise, always reduced
/// with a positive denominator.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let err = || Error::ParseRational(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n, d),
        None => (trimmed, "1"),
    };
    let num = BigInt::from_str(num.trim()).map_err(|_| err())?;
    let den = BigInt::from_str(den.trim()).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

pub fn rational_from_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn rational_from_biguint(value: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(value.clone()))
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `floor(x * 2^bits') / 2^bits'` where `bits'` keeps roughly `bits`
/// significant bits of `x`. Rounds toward minus infinity.
pub(crate) fn round_down_dyadic(x: &Rational, bits: u32) -> Rational {
    round_dyadic(x, bits, false)
}

/// Same as [`round_down_dyadic`] but rounds toward plus infinity.
pub(crate) fn round_up_dyadic(x: &Rational, bits: u32) -> Rational {
    round_dyadic(x, bits, true)
}

fn round_dyadic(x: &Rational, bits: u32, up: bool) -> Rational {
    if x.is_zero() {
        return x.clone();
    }
    let magnitude = x.numer().abs().bits() as i64 - x.denom().bits() as i64;
    let shift = bits as i64 - magnitude;
    let scaled = if shift >= 0 {
        x * Rational::from_integer(BigInt::one() << shift as usize)
    } else {
        x / Rational::from_integer(BigInt::one() << (-shift) as usize)
    };
    let rounded = if up { scaled.ceil() } else { scaled.floor() };
    if shift >= 0 {
        rounded / Rational::from_integer(BigInt::one() << shift as usize)
    } else {
        rounded * Rational::from_integer(BigInt::one() << (-shift) as usize)
    }
}

/// Serde adapter storing a rational as its canonical string.
pub mod serde_str {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text).map_err(de::Error::custom)
    }
}

/// Serde adapter for `Option<Rational>`; `None` becomes `null`.
pub mod serde_opt_str {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(
        value: &Option<Rational>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => serializer.serialize_some(&format_rational(v)),
            None => serializer.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(deserializer)?
            .map(|text| parse_rational(&text).map_err(de::Error::custom))
            .transpose()
    }
}

/// Serde adapter for big unsigned integers as decimal strings.
pub mod serde_biguint_str {
    use std::str::FromStr;

    use num_bigint::BigUint;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigUint, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(deserializer)?;
        BigUint::from_str(&text).map_err(de::Error::custom)
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_forms() {
        assert_eq!(format_rational(&Rational::new(4.into(), (-6).into())), "-2/3");
        assert_eq!(format_rational(&rational_from_int(2)), "2");
        assert_eq!(parse_rational(" 6/4 ").unwrap(), Rational::new(3.into(), 2.into()));
        assert_eq!(parse_rational("-7").unwrap(), rational_from_int(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("one").is_err());
    }

    #[test]
    fn dyadic_rounding_brackets() {
        let third = Rational::new(1.into(), 3.into());
        let lo = round_down_dyadic(&third, 64);
        let hi = round_up_dyadic(&third, 64);
        assert!(lo < third && third < hi);
        assert!(&hi - &lo < Rational::new(1.into(), BigInt::one() << 60));
        let big = rational_from_int(-1000);
        assert_eq!(round_down_dyadic(&big, 64), big);
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(10), BigUint::from(3_628_800u32));
    }
}
