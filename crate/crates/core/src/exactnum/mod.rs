//! Exact rational and cyclotomic arithmetic.

mod cyclotomic;
pub mod json;
pub mod poly;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

pub use cyclotomic::{CyclotomicField, CyclotomicNumber};
pub use poly::{cyclotomic_polynomial, divisors, lcm, totient};

use crate::error::{Error, Result};

/// Coefficient types usable in the power basis of a cyclotomic field.
pub trait Coeff:
    Clone + Eq + Hash + Debug + Send + Sync + Num + Signed + FromPrimitive + 'static
{
}

impl<T> Coeff for T where
    T: Clone + Eq + Hash + Debug + Send + Sync + Num + Signed + FromPrimitive + 'static
{
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Renders `p/q`, or `p` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = |msg: &str| Error::ParseError {
        position: 0,
        message: format!("{msg}: {s:?}"),
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for q in [rat(2, 3), rat(-7, 4), rat(5, 1), rat(0, 9)] {
            assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
        assert_eq!(format_rational(&rat(4, 6)), "2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn canonical_zero() {
        let z = rat(0, 5);
        assert_eq!(z.denom(), &BigInt::from(1));
    }
}
