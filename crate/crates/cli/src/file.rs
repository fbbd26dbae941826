//! The arrangement file format.
//!
//! ```json
//! {"format_version": 1, "label": "pencil", "lines": [["1","0","0"], ["0","1","0"], ["1","-1/2","0"]]}
//! ```
//!
//! Each triple `[a, b, c]` is the line `a x + b y + c z`. Coefficients are
//! JSON integers or strings `"p"` / `"p/q"`; files are always written with
//! strings. An optional `"d"` must equal the number of lines.

use std::fmt;
use std::path::Path;

use linarr_core::lattice::Arrangement;
use linarr_core::ratlin::Rational;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

impl Coefficient {
    pub fn to_rational(&self) -> Result<Rational, String> {
        match self {
            Coefficient::Int(n) => Ok(Rational::from_integer((*n).into())),
            Coefficient::Text(s) => {
                let t = s.trim();
                let q: Rational = t.parse().map_err(|_| format!("invalid rational {s:?}"))?;
                Ok(q)
            }
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Int(n) => write!(f, "{n}"),
            Coefficient::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub lines: Vec<[Coefficient; 3]>,
}

impl ArrangementFile {
    pub fn from_arrangement(arr: &Arrangement, label: Option<String>) -> Self {
        let lines = arr
            .forms()
            .iter()
            .map(|l| l.coeffs().clone().map(|q| Coefficient::Text(q.to_string())))
            .collect();
        ArrangementFile { format_version: FORMAT_VERSION, d: Some(arr.degree()), label, lines }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: ArrangementFile =
            serde_json::from_str(text).map_err(|e| CliError::Parse(format!("malformed arrangement file: {e}")))?;
        if file.format_version != FORMAT_VERSION {
            return Err(CliError::Parse(format!("unsupported format_version {}", file.format_version)));
        }
        if let Some(d) = file.d {
            if d != file.lines.len() {
                return Err(CliError::Parse(format!("d = {d} but {} lines listed", file.lines.len())));
            }
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Exact coefficients; a malformed entry is named by its 1-based line.
    pub fn coefficients(&self) -> Result<Vec<[Rational; 3]>, CliError> {
        self.lines
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let mut out = Vec::with_capacity(3);
                for c in t {
                    out.push(c.to_rational().map_err(|e| CliError::Parse(format!("line {}: {e}", i + 1)))?);
                }
                Ok([out[0].clone(), out[1].clone(), out[2].clone()])
            })
            .collect()
    }

    pub fn arrangement(&self) -> Result<Arrangement, CliError> {
        Ok(Arrangement::from_coefficients(self.coefficients()?)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("arrangement files serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_coefficients() {
        let f = ArrangementFile::parse(r#"{"format_version":1,"lines":[[1,0,0],["0","1/2","0"],["1"," -3/6 ",0]]}"#).unwrap();
        let c = f.coefficients().unwrap();
        assert_eq!(c[1][1].to_string(), "1/2");
        assert_eq!(c[2][1].to_string(), "-1/2");
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(ArrangementFile::parse("{"), Err(CliError::Parse(_))));
        let wrong_d = r#"{"format_version":1,"d":3,"lines":[[1,0,0]]}"#;
        assert!(matches!(ArrangementFile::parse(wrong_d), Err(CliError::Parse(_))));
        let bad = ArrangementFile::parse(r#"{"format_version":1,"lines":[[1,0,0],["x",1,0]]}"#).unwrap();
        match bad.coefficients() {
            Err(CliError::Parse(m)) => assert!(m.contains("line 2")),
            other => panic!("{other:?}"),
        }
    }
}
