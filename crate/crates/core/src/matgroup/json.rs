//! `{"n": int, "conductor": int, "generators": [matrix, ...]}` with matrices
//! as row-major arrays of cyclotomic numbers. An entry may also be a plain
//! integer or a rational string such as `"-1/2"`; entries whose conductor
//! divides the group conductor are embedded.

use serde::{Deserialize, Serialize};

use super::GroupElement;
use crate::error::{Error, Result};
use crate::exactnum::json::CyclotomicJson;
use crate::exactnum::parse_rational;
use crate::Cyclotomic;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Cyclotomic(CyclotomicJson),
    Int(i64),
    Rational(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub n: usize,
    pub conductor: u64,
    pub generators: Vec<Vec<Vec<EntryJson>>>,
}

impl EntryJson {
    fn to_cyclotomic(&self, conductor: u64) -> Result<Cyclotomic> {
        match self {
            EntryJson::Int(v) => Ok(Cyclotomic::from_int(conductor, *v)),
            EntryJson::Rational(s) => Ok(Cyclotomic::from_rational(conductor, parse_rational(s)?)),
            EntryJson::Cyclotomic(c) => Cyclotomic::try_from(c.clone())?.embed(conductor),
        }
    }
}

impl GroupJson {
    pub fn generators(&self) -> Result<Vec<GroupElement>> {
        if self.conductor == 0 {
            return Err(Error::ParseError { position: 0, message: "conductor must be positive".into() });
        }
        self.generators
            .iter()
            .map(|mat| {
                if mat.len() != self.n || mat.iter().any(|r| r.len() != self.n) {
                    return Err(Error::DimensionMismatch(format!("generator is not {0}x{0}", self.n)));
                }
                let rows = mat
                    .iter()
                    .map(|r| r.iter().map(|e| e.to_cyclotomic(self.conductor)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                GroupElement::from_rows(rows)
            })
            .collect()
    }

    pub fn from_generators(gens: &[GroupElement]) -> Self {
        GroupJson {
            n: gens[0].dim(),
            conductor: gens[0].conductor(),
            generators: gens
                .iter()
                .map(|g| {
                    g.matrix()
                        .to_rows()
                        .iter()
                        .map(|r| r.iter().map(|e| EntryJson::Cyclotomic(e.into())).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_entries() {
        let text = r#"{"n": 2, "conductor": 4,
            "generators": [[[{"m": 4, "coeffs": [[0,1],[1,1]]}, 0], [0, {"m": 4, "coeffs": [[0,1],[-1,1]]}]],
                           [[0, 1], [-1, "0"]]]}"#;
        let g: GroupJson = serde_json::from_str(text).unwrap();
        let gens = g.generators().unwrap();
        assert_eq!(gens[0], GroupElement::diagonal_roots(4, &[1, 3]));
        assert_eq!(gens[1], GroupElement::from_integers(4, &[vec![0, 1], vec![-1, 0]]).unwrap());
        let back = GroupJson::from_generators(&gens);
        assert_eq!(back.generators().unwrap(), gens);
    }

    #[test]
    fn embeds_smaller_conductors() {
        let text = r#"{"n": 1, "conductor": 6, "generators": [[[{"m": 3, "coeffs": [[0,1],[1,1]]}]]]}"#;
        let g: GroupJson = serde_json::from_str(text).unwrap();
        assert_eq!(g.generators().unwrap()[0], GroupElement::diagonal_roots(6, &[2]));
    }

    #[test]
    fn rejects_bad_shape() {
        let text = r#"{"n": 2, "conductor": 1, "generators": [[[1, 0]]]}"#;
        let g: GroupJson = serde_json::from_str(text).unwrap();
        assert!(g.generators().is_err());
    }
}
