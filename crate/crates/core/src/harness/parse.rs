use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::CyclicType;
use crate::matgroup::json::GroupJson;
use crate::toriclat::json::ConeJson;

/// A validated input for the CLI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSpec {
    /// `pseudo_reflections` lists the powers `k` with `g^k` a
    /// pseudo-reflection; empty for admissible types.
    Cyclic {
        ty: CyclicType,
        pseudo_reflections: Vec<u64>,
    },
    Group(GroupJson),
    Cone(ConeJson),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicJson {
    pub d: u64,
    pub e: Vec<u64>,
}

#[derive(Deserialize)]
struct CyclicWrapper {
    cyclic: CyclicJson,
}

fn cyclic_spec(d: u64, e: Vec<u64>) -> Result<InputSpec> {
    let ty = CyclicType::new(d, e)?;
    let pseudo_reflections = ty.pseudo_reflection_powers();
    Ok(InputSpec::Cyclic { ty, pseudo_reflections })
}

/// Accepts `1/d(e1,...,en)`, `{"cyclic": {"d": .., "e": [..]}}`, group JSON
/// or cone JSON.
pub fn parse_input(text: &str) -> Result<InputSpec> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        parse_json(text)
    } else {
        let (d, e) = parse_cyclic(text)?;
        cyclic_spec(d, e)
    }
}

fn json_error(text: &str, err: serde_json::Error) -> Error {
    // serde_json reports 1-based line and column
    let offset: usize = text
        .split_inclusive('\n')
        .take(err.line().saturating_sub(1))
        .map(|l| l.chars().count())
        .sum::<usize>()
        + err.column().saturating_sub(1);
    Error::ParseError {
        position: offset,
        message: err.to_string(),
    }
}

fn parse_json(text: &str) -> Result<InputSpec> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| json_error(text, e))?;
    let shape = |e: serde_json::Error| Error::ParseError {
        position: 0,
        message: e.to_string(),
    };
    if value.get("cyclic").is_some() {
        let w: CyclicWrapper = serde_json::from_value(value).map_err(shape)?;
        cyclic_spec(w.cyclic.d, w.cyclic.e)
    } else if value.get("generators").is_some() {
        Ok(InputSpec::Group(serde_json::from_value(value).map_err(shape)?))
    } else if value.get("rays").is_some() {
        Ok(InputSpec::Cone(serde_json::from_value(value).map_err(shape)?))
    } else {
        Err(Error::ParseError {
            position: 0,
            message: "expected a \"cyclic\", \"generators\" or \"rays\" key".into(),
        })
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn fail<T>(&self, message: &str) -> Result<T> {
        Err(Error::ParseError {
            position: self.pos,
            message: format!("{message} in {:?}", self.text.trim()),
        })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&format!("expected '{c}'"))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected a nonnegative integer");
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        match digits.parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.fail("integer too large")
            }
        }
    }
}

/// `1/d(e1,...,en)` into `(d, e)`; whitespace is allowed between tokens.
pub fn parse_cyclic(text: &str) -> Result<(u64, Vec<u64>)> {
    let mut c = Cursor {
        chars: text.chars().collect(),
        pos: 0,
        text,
    };
    let one = c.number()?;
    if one != 1 {
        c.pos = 0;
        c.skip_ws();
        return c.fail("expected the prefix '1/'");
    }
    c.expect('/')?;
    let d = c.number()?;
    c.expect('(')?;
    let mut e = vec![c.number()?];
    loop {
        c.skip_ws();
        match c.chars.get(c.pos) {
            Some(',') => {
                c.pos += 1;
                e.push(c.number()?);
            }
            Some(')') => {
                c.pos += 1;
                break;
            }
            _ => return c.fail("expected ',' or ')'"),
        }
    }
    c.skip_ws();
    if c.pos != c.chars.len() {
        return c.fail("trailing characters");
    }
    Ok((d, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(text: &str) -> (u64, Vec<u64>, Vec<u64>) {
        match parse_input(text).unwrap() {
            InputSpec::Cyclic { ty, pseudo_reflections } => (ty.d(), ty.exponents().to_vec(), pseudo_reflections),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shorthand() {
        assert_eq!(cyclic("1/3(1,1)"), (3, vec![1, 1], vec![]));
        assert_eq!(cyclic(" 1/4( 1 , 3 ) "), (4, vec![1, 3], vec![]));
        assert_eq!(cyclic("1/2(1,2)").2, vec![1]);
        assert!(matches!(parse_input("1/4(0,1)"), Err(Error::InvalidWeights(_))));
        assert!(matches!(parse_input("1/4(5,1)"), Err(Error::InvalidWeights(_))));
    }

    #[test]
    fn shorthand_errors_have_positions() {
        let pos = |t: &str| match parse_input(t) {
            Err(Error::ParseError { position, .. }) => position,
            other => panic!("{other:?}"),
        };
        assert_eq!(pos("2/3(1,1)"), 0);
        assert_eq!(pos("1/3(1;1)"), 5);
        assert_eq!(pos("1/3(1,1"), 7);
        assert_eq!(pos("1/3(1,1)x"), 8);
        assert_eq!(pos("1/(1,1)"), 2);
    }

    #[test]
    fn json_inputs() {
        assert_eq!(cyclic(r#"{"cyclic": {"d": 5, "e": [1, 2]}}"#), (5, vec![1, 2], vec![]));
        let g = parse_input(r#"{"n": 1, "conductor": 2, "generators": [[[-1]]]}"#).unwrap();
        assert!(matches!(g, InputSpec::Group(_)));
        let c = parse_input(r#"{"n": 2, "rays": [[1, 0], [0, 1]]}"#).unwrap();
        assert!(matches!(c, InputSpec::Cone(_)));
        let text = "{\n  \"n\": 2,\n  \"rays\": [[1, 0] [0, 1]]\n}";
        match parse_input(text) {
            Err(Error::ParseError { position, .. }) => assert_eq!(text.chars().nth(position), Some('[')),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_input(r#"{"x": 1}"#), Err(Error::ParseError { .. })));
    }
}
