//! JSON ingestion and emission of algebra presentations.
//!
//! File shape:
//!
//! ```json
//! {
//!   "name": "heisenberg",
//!   "p": 2,
//!   "vars": [],
//!   "basis": ["x", "y", "z"],
//!   "brackets": [{ "i": 0, "j": 1, "coeffs": { "z": "1" } }],
//!   "pmap": { "x": {} }
//! }
//! ```
//!
//! Bracket coefficient maps and p-map rows are sparse: absent labels mean
//! zero. Scalar strings use the same syntax the scalar parser accepts,
//! including rational functions in the field variables.

use crate::liealg::{LieAlgebra, LieError};
use crate::scalars::{Field, Scalar, ScalarError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown basis label `{0}` in {1}")]
    UnknownLabel(String, String),
    #[error("scalar `{text}` failed to parse: {source}")]
    BadScalar {
        text: String,
        source: ScalarError,
    },
    #[error(transparent)]
    Field(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] LieError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, String>,
}

/// Serializable presentation of a restricted Lie algebra.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraSpecFile {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub description: Option<String>,
    pub p: u32,
    pub vars: Vec<String>,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    pub pmap: BTreeMap<String, BTreeMap<String, String>>,
}

impl AlgebraSpecFile {
    pub fn load(path: &Path) -> Result<AlgebraSpecFile, SpecError> {
        let text = std::fs::read_to_string(path).map_err(|source| SpecError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), SpecError> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text).map_err(|source| SpecError::Write {
            path: path.display().to_string(),
            source,
        })
    }

    /// Build the algebra. Shape errors (bad labels, bad scalars, bad index
    /// pairs) are reported here; the restricted-algebra axioms themselves
    /// are checked separately by `validate`.
    pub fn to_algebra(&self) -> Result<LieAlgebra, SpecError> {
        let field = Field::new(self.p, &self.vars)?;
        let n = self.basis.len();
        let label_index = |label: &str, context: &str| -> Result<usize, SpecError> {
            self.basis
                .iter()
                .position(|b| b == label)
                .ok_or_else(|| SpecError::UnknownLabel(label.to_string(), context.to_string()))
        };
        let parse_scalar = |text: &str| -> Result<Scalar, SpecError> {
            field.parse(text).map_err(|source| SpecError::BadScalar {
                text: text.to_string(),
                source,
            })
        };
        let sparse_row = |coeffs: &BTreeMap<String, String>,
                          context: &str|
         -> Result<Vec<Scalar>, SpecError> {
            let mut row = vec![field.zero(); n];
            for (label, text) in coeffs {
                let k = label_index(label, context)?;
                row[k] = parse_scalar(text)?;
            }
            Ok(row)
        };

        let mut brackets = Vec::new();
        for entry in &self.brackets {
            let context = format!("bracket ({}, {})", entry.i, entry.j);
            brackets.push(((entry.i, entry.j), sparse_row(&entry.coeffs, &context)?));
        }
        let mut pmap = Vec::new();
        for label in &self.basis {
            let row = match self.pmap.get(label) {
                Some(coeffs) => sparse_row(coeffs, &format!("p-map image of {label}"))?,
                None => vec![field.zero(); n],
            };
            pmap.push(row);
        }
        for label in self.pmap.keys() {
            label_index(label, "p-map keys")?;
        }
        Ok(LieAlgebra::new(field, self.basis.clone(), brackets, pmap)?)
    }

    /// Presentation of an existing algebra, with sparse rows.
    pub fn from_algebra(name: &str, alg: &LieAlgebra) -> AlgebraSpecFile {
        let labels = alg.labels();
        let sparse = |coords: &[Scalar]| -> BTreeMap<String, String> {
            coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (labels[k].clone(), c.to_string()))
                .collect()
        };
        let mut brackets = Vec::new();
        for i in 0..alg.dim() {
            for j in (i + 1)..alg.dim() {
                let row = alg.bracket_of_generators(i, j);
                if row.iter().any(|c| !c.is_zero()) {
                    brackets.push(BracketEntry {
                        i,
                        j,
                        coeffs: sparse(&row),
                    });
                }
            }
        }
        let mut pmap = BTreeMap::new();
        for (i, label) in labels.iter().enumerate() {
            let row = alg.pmap_row(i);
            if !row.is_zero() {
                pmap.insert(label.clone(), sparse(row.coords()));
            }
        }
        AlgebraSpecFile {
            name: name.to_string(),
            description: None,
            p: alg.p(),
            vars: alg.field().vars().to_vec(),
            basis: labels.to_vec(),
            brackets,
            pmap,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::fixtures;

    #[test]
    fn round_trip_through_spec_file() {
        let l = fixtures::heisenberg(2);
        let spec = AlgebraSpecFile::from_algebra("heisenberg", &l);
        let rebuilt = spec.to_algebra().unwrap();
        assert_eq!(rebuilt.labels(), l.labels());
        assert!(rebuilt.is_valid());
        let spec2 = AlgebraSpecFile::from_algebra("heisenberg", &rebuilt);
        assert_eq!(
            serde_json::to_string(&spec).unwrap(),
            serde_json::to_string(&spec2).unwrap()
        );
    }

    #[test]
    fn rational_function_coefficients_round_trip() {
        let l = fixtures::perfect_field_example(2);
        let spec = AlgebraSpecFile::from_algebra("rank2", &l);
        let rebuilt = spec.to_algebra().unwrap();
        assert!(rebuilt.is_valid());
        assert_eq!(
            rebuilt.pmap_row(1).coords()[0],
            rebuilt.field().var(0),
            "y1^[2] = t1·x must survive the round trip"
        );
    }

    #[test]
    fn unknown_labels_are_reported() {
        let json = r#"{
            "name": "bad", "p": 2, "vars": [], "basis": ["x"],
            "brackets": [], "pmap": {"q": {"x": "1"}}
        }"#;
        let spec: AlgebraSpecFile = serde_json::from_str(json).unwrap();
        assert!(matches!(
            spec.to_algebra(),
            Err(SpecError::UnknownLabel(..))
        ));
    }

    #[test]
    fn bad_scalars_are_reported_with_text() {
        let json = r#"{
            "name": "bad", "p": 2, "vars": [], "basis": ["x"],
            "brackets": [], "pmap": {"x": {"x": "t9"}}
        }"#;
        let spec: AlgebraSpecFile = serde_json::from_str(json).unwrap();
        let err = spec.to_algebra().unwrap_err();
        assert!(err.to_string().contains("t9"), "{err}");
    }
}
