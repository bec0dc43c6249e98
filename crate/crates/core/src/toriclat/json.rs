//! `{"n": int, "lattice_basis": [[rational]], "rays": [[rational]]}`.
//!
//! Entries are integers or strings like `"1/3"`. Rays are in the ambient
//! coordinates of `Q^n`, like the lattice basis; `lattice_basis` defaults to
//! the standard basis.

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{Cone, QuotLattice};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Text(String),
}

impl ScalarJson {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            ScalarJson::Int(v) => Ok(Rational::from_integer(BigInt::from(*v))),
            ScalarJson::Text(s) => parse_rational(s),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        match (q.is_integer(), i64::try_from(q.numer())) {
            (true, Ok(v)) => ScalarJson::Int(v),
            _ => ScalarJson::Text(format_rational(q)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_basis: Option<Vec<Vec<ScalarJson>>>,
    pub rays: Vec<Vec<ScalarJson>>,
}

fn rows(rows: &[Vec<ScalarJson>], n: usize, what: &str) -> Result<Vec<Vec<Rational>>> {
    rows.iter()
        .map(|r| {
            if r.len() != n {
                return Err(Error::DimensionMismatch(format!("{what} of length {} in dimension {n}", r.len())));
            }
            r.iter().map(ScalarJson::to_rational).collect()
        })
        .collect()
}

impl ConeJson {
    pub fn lattice(&self) -> Result<QuotLattice<BigInt>> {
        match &self.lattice_basis {
            None => Ok(QuotLattice::standard(self.n)),
            Some(b) => {
                if b.len() != self.n {
                    return Err(Error::InvalidLattice(format!(
                        "{} basis vectors in dimension {}",
                        b.len(),
                        self.n
                    )));
                }
                QuotLattice::from_generators(self.n, &rows(b, self.n, "basis vector")?)
            }
        }
    }

    pub fn cone(&self) -> Result<Cone<BigInt>> {
        Cone::new(self.n, rows(&self.rays, self.n, "ray")?)
    }

    pub fn from_parts(cone: &Cone<BigInt>, lattice: &QuotLattice<BigInt>) -> Self {
        let enc = |rs: &[Vec<Ratio<BigInt>>]| -> Vec<Vec<ScalarJson>> {
            rs.iter().map(|r| r.iter().map(ScalarJson::from_rational).collect()).collect()
        };
        ConeJson {
            n: cone.ambient_dim(),
            lattice_basis: Some(enc(&lattice.basis())),
            rays: enc(cone.rays()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toriclat::toric_index;

    #[test]
    fn parses_and_round_trips() {
        let text = r#"{"n": 2, "lattice_basis": [["1/3", "1/3"], [0, 1]], "rays": [[1, 0], [0, 1]]}"#;
        let j: ConeJson = serde_json::from_str(text).unwrap();
        let (c, l) = (j.cone().unwrap(), j.lattice().unwrap());
        assert_eq!(l.index_over_zn(), Some(BigInt::from(3)));
        assert_eq!(toric_index(&c, &l).unwrap(), BigInt::from(3));
        let again: ConeJson = serde_json::from_str(&serde_json::to_string(&ConeJson::from_parts(&c, &l)).unwrap()).unwrap();
        assert_eq!(again.lattice().unwrap(), l);
        assert_eq!(again.cone().unwrap(), c);
    }

    #[test]
    fn default_lattice_and_errors() {
        let j: ConeJson = serde_json::from_str(r#"{"n": 2, "rays": [[1, 0], [1, 2]]}"#).unwrap();
        assert_eq!(j.lattice().unwrap(), QuotLattice::standard(2));
        let bad: ConeJson = serde_json::from_str(r#"{"n": 2, "rays": [[1, 0, 0]]}"#).unwrap();
        assert!(bad.cone().is_err());
        let bad: ConeJson = serde_json::from_str(r#"{"n": 2, "rays": [["1/0", 1]]}"#).unwrap();
        assert!(bad.cone().is_err());
    }
}
