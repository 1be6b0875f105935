//! Exact scalars and their textual form.
//!
//! Rationals are written as `"p/q"` (or a bare integer) so that documents
//! round-trip without any loss.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Int = BigInt;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Reduced `p/q`, or just `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn sign(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Integer combination `sum coeffs[k] * basis[k]`.
pub fn combine(coeffs: &[Int], basis: &[Rational]) -> Rational {
    coeffs
        .iter()
        .zip(basis)
        .fold(Rational::zero(), |acc, (c, b)| {
            acc + Rational::from_integer(c.clone()) * b
        })
}

/// Serde adaptor for a rational stored as a string (or a JSON integer).
pub(crate) mod serde_rational {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Text(String),
        Number(i64),
    }

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Text(t) => parse_rational(&t).map_err(de::Error::custom),
            Raw::Number(n) => Ok(Rational::from_integer(BigInt::from(n))),
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(
            v: &[Rational],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for q in v {
                seq.serialize_element(&format_rational(q))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Rational>, D::Error> {
            let raw = Vec::<Raw>::deserialize(d)?;
            raw.into_iter()
                .map(|r| match r {
                    Raw::Text(t) => parse_rational(&t).map_err(de::Error::custom),
                    Raw::Number(n) => Ok(Rational::from_integer(BigInt::from(n))),
                })
                .collect()
        }
    }
}

/// Serde adaptor for a list of big integers written as plain JSON numbers.
///
/// Values outside the `i64` range are emitted as decimal strings.
pub(crate) mod serde_int_vec {
    use super::*;
    use num_traits::ToPrimitive;
    use serde::ser::SerializeSeq;
    use serde::{de, Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Number(i64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            match x.to_i64() {
                Some(n) => seq.serialize_element(&n)?,
                None => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Int>, D::Error> {
        Vec::<Raw>::deserialize(d)?
            .into_iter()
            .map(|r| match r {
                Raw::Number(n) => Ok(BigInt::from(n)),
                Raw::Text(t) => BigInt::from_str(t.trim()).map_err(de::Error::custom),
            })
            .collect()
    }
}
