//! Arbitrary precision rationals and their string form.
//!
//! A rational is written `"p/q"`, or `"p"` when `q = 1`. Values are always
//! kept reduced with a positive denominator.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical string form: `"p/q"`, or `"p"` for integers.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Serde adapter for a single rational, accepting strings or JSON integers.
pub mod serde_str {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum Repr {
        Str(String),
        Int(i64),
    }

    impl Repr {
        pub(crate) fn into_rational(self) -> Result<Rational> {
            match self {
                Repr::Str(s) => parse(&s),
                Repr::Int(n) => Ok(int(n)),
            }
        }
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        Repr::deserialize(d)?
            .into_rational()
            .map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(format(&frac(6, -4)), "-3/2");
        assert_eq!(format(&frac(4, 2)), "2");
        assert_eq!(format(&frac(0, 5)), "0");
        assert_eq!(*frac(0, -7).denom(), BigInt::from(1));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["1/6", "-5/18", "0", "12345678901234567890123/7"] {
            assert_eq!(format(&parse(s).unwrap()), s);
        }
        assert_eq!(parse(" 2/4 ").unwrap(), frac(1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1.5").is_err());
    }
}
