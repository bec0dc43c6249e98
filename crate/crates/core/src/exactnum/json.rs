//! JSON forms: rationals as `[num, den]`, cyclotomic numbers as
//! `{"m": int, "coeffs": [[num, den], ...]}`. Integers that do not fit in 64
//! bits are written as decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CyclotomicNumber;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntJson {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for IntJson {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(s) => IntJson::Small(s),
            None => IntJson::Big(v.to_string()),
        }
    }
}

impl IntJson {
    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntJson::Small(v) => Ok(BigInt::from(*v)),
            IntJson::Big(s) => s.trim().parse().map_err(|_| Error::ParseError {
                position: 0,
                message: format!("not an integer: {s:?}"),
            }),
        }
    }
}

/// A rational serialized as a two-element array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalJson(pub BigRational);

impl Serialize for RationalJson {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [IntJson::from(self.0.numer()), IntJson::from(self.0.denom())].serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [n, den] = <[IntJson; 2]>::deserialize(d)?;
        let n = n.to_bigint().map_err(serde::de::Error::custom)?;
        let den = den.to_bigint().map_err(serde::de::Error::custom)?;
        if den.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(RationalJson(BigRational::new(n, den)))
    }
}

/// `#[serde(with = "rational_pair")]` for `BigRational` fields.
pub mod rational_pair {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalJson(q.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        Ok(RationalJson::deserialize(d)?.0)
    }
}

/// `#[serde(with = "option_rational_pair")]` for `Option<BigRational>` fields.
pub mod option_rational_pair {
    use super::*;

    pub fn serialize<S: Serializer>(
        q: &Option<BigRational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        q.clone().map(RationalJson).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<BigRational>, D::Error> {
        Ok(Option::<RationalJson>::deserialize(d)?.map(|r| r.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicJson {
    pub m: u64,
    pub coeffs: Vec<RationalJson>,
}

impl From<&CyclotomicNumber<BigRational>> for CyclotomicJson {
    fn from(c: &CyclotomicNumber<BigRational>) -> Self {
        CyclotomicJson {
            m: c.conductor(),
            coeffs: c.coeffs().iter().cloned().map(RationalJson).collect(),
        }
    }
}

impl TryFrom<CyclotomicJson> for CyclotomicNumber<BigRational> {
    type Error = Error;
    fn try_from(j: CyclotomicJson) -> Result<Self> {
        if j.m == 0 {
            return Err(Error::ParseError {
                position: 0,
                message: "conductor must be positive".into(),
            });
        }
        CyclotomicNumber::new(j.m, j.coeffs.into_iter().map(|r| r.0).collect())
    }
}
