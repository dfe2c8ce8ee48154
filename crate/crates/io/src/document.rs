//! JSON documents for matrices and problems.
//!
//! Entries are stored as text (`"1/7"`, `"0.25"`, `"3"`) and only parsed
//! when a document is converted into engine types, so a document survives a
//! load/save cycle unchanged. Plain JSON numbers are accepted on input and
//! kept in their shortest round-trip decimal form.

use std::fmt;
use std::path::Path;

use maxahp_core::ahp::{Criteria, Problem, SrMatrix};
use maxahp_core::{MaxMatrix, PositiveVector, Tolerances};
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Entry(String);

impl Entry {
    pub fn new(text: impl Into<String>) -> Self {
        Entry(text.into())
    }

    /// Shortest decimal text that parses back to `v` exactly.
    pub fn from_f64(v: f64) -> Self {
        Entry(format!("{v}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn value(&self) -> std::result::Result<f64, ScalarError> {
        parse_scalar(&self.0)
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
            Float(f64),
        }
        Ok(match Raw::deserialize(d)? {
            Raw::Text(s) => Entry(s),
            Raw::Int(i) => Entry(i.to_string()),
            Raw::Float(f) => Entry::from_f64(f),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Declared size; checked against `entries` when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub entries: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl MatrixDocument {
    pub fn from_matrix(a: &MaxMatrix) -> Self {
        Self {
            name: None,
            n: Some(a.dim()),
            entries: a
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(Entry::from_f64).collect())
                .collect(),
            labels: None,
        }
    }

    /// Row count, the size the document claims to have.
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn to_matrix(&self, context: &str) -> Result<MaxMatrix> {
        let n = self.entries.len();
        if n == 0 {
            return Err(Error::Schema(format!("{context}: matrix has no rows")));
        }
        if let Some(declared) = self.n {
            if declared != n {
                return Err(Error::Schema(format!(
                    "{context}: declared n = {declared} but {n} rows given"
                )));
            }
        }
        let mut rows = Vec::with_capacity(n);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Schema(format!(
                    "{context}: matrix is not square: row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            let parsed = row
                .iter()
                .enumerate()
                .map(|(j, e)| {
                    e.value().map_err(|source| Error::Entry {
                        context: context.to_string(),
                        row: i + 1,
                        col: j + 1,
                        source,
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            rows.push(parsed);
        }
        if let Some(labels) = &self.labels {
            if labels.len() != n {
                return Err(Error::Schema(format!(
                    "{context}: {} labels for a {n}x{n} matrix",
                    labels.len()
                )));
            }
        }
        MaxMatrix::from_rows(rows).map_err(|e| Error::Schema(format!("{context}: {e}")))
    }

    pub fn to_sr(&self, context: &str, reciprocity_tol: f64) -> Result<SrMatrix> {
        let m = self.to_matrix(context)?;
        SrMatrix::validate(m, self.labels.clone(), reciprocity_tol).map_err(|source| Error::Sr {
            context: context.to_string(),
            source,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CriteriaDocument {
    /// Pairwise comparisons between criteria.
    Matrix(MatrixDocument),
    /// One positive weight per criterion.
    Weights(Vec<Entry>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    /// Alternative names; `"1"`, `"2"`, … when empty.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alternatives: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criteria: Option<CriteriaDocument>,
    pub matrices: Vec<MatrixDocument>,
    /// Overrides; missing fields keep their defaults.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
}

pub(crate) fn matrix_context(k: usize, doc: &MatrixDocument) -> String {
    match &doc.name {
        Some(name) => format!("matrix {} ({name})", k + 1),
        None => format!("matrix {}", k + 1),
    }
}

pub(crate) fn parse_weights(entries: &[Entry], context: &str) -> Result<PositiveVector> {
    let values = entries
        .iter()
        .map(|e| {
            e.value().map_err(|source| Error::Scalar {
                context: context.to_string(),
                source,
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    PositiveVector::new(values).map_err(|e| Error::Schema(format!("{context}: {e}")))
}

impl ProblemDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialise")
    }

    /// `(n, m)`: the largest matrix size and the number of matrices.
    pub fn size(&self) -> (usize, usize) {
        let n = self
            .matrices
            .iter()
            .map(MatrixDocument::dim)
            .max()
            .unwrap_or(0);
        (n.max(self.alternatives.len()), self.matrices.len())
    }

    pub fn tolerances(&self) -> Result<Tolerances> {
        let t = self.tolerances.unwrap_or_default();
        if t.is_valid() {
            Ok(t)
        } else {
            Err(Error::Schema(format!(
                "tolerances must be finite and nonnegative: {t:?}"
            )))
        }
    }

    pub fn criterion_names(&self) -> Vec<String> {
        self.matrices
            .iter()
            .enumerate()
            .map(|(k, m)| m.name.clone().unwrap_or_else(|| format!("C{}", k + 1)))
            .collect()
    }

    /// Alternative names, generated from the first matrix when absent.
    pub fn alternative_names(&self) -> Vec<String> {
        if self.alternatives.is_empty() {
            let n = self.matrices.first().map_or(0, MatrixDocument::dim);
            (1..=n).map(|i| i.to_string()).collect()
        } else {
            self.alternatives.clone()
        }
    }

    /// Fully validated problem: every matrix parsed and checked for the SR
    /// property.
    pub fn to_problem(&self) -> Result<Problem> {
        let tol = self.tolerances()?;
        if self.matrices.is_empty() {
            return Err(Error::Schema("problem has no matrices".into()));
        }
        let matrices = self
            .matrices
            .iter()
            .enumerate()
            .map(|(k, m)| m.to_sr(&matrix_context(k, m), tol.reciprocity))
            .collect::<Result<Vec<_>>>()?;
        let criteria = match &self.criteria {
            None => None,
            Some(CriteriaDocument::Matrix(c)) => Some(Criteria::Matrix(
                c.to_sr("criteria matrix", tol.reciprocity)?,
            )),
            Some(CriteriaDocument::Weights(w)) => {
                Some(Criteria::Weights(parse_weights(w, "criteria weights")?))
            }
        };
        Problem::new(
            self.alternative_names(),
            self.criterion_names(),
            matrices,
            criteria,
        )
        .map_err(|e| Error::Schema(e.to_string()))
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_problem_document(path: impl AsRef<Path>) -> Result<ProblemDocument> {
    ProblemDocument::from_json(&read(path.as_ref())?)
}

pub fn load_problem(path: impl AsRef<Path>) -> Result<Problem> {
    load_problem_document(path)?.to_problem()
}

pub fn load_matrix_document(path: impl AsRef<Path>) -> Result<MatrixDocument> {
    Ok(serde_json::from_str(&read(path.as_ref())?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ErrorKind;

    fn doc(json: &str) -> ProblemDocument {
        ProblemDocument::from_json(json).unwrap()
    }

    #[test]
    fn entries_accept_text_and_numbers() {
        let m: MatrixDocument =
            serde_json::from_str(r#"{"entries": [[1, "1/3"], [3, 1.0]]}"#).unwrap();
        assert_eq!(m.entries[0][1].as_str(), "1/3");
        assert_eq!(m.entries[1][0].as_str(), "3");
        assert_eq!(m.entries[1][1].as_str(), "1");
        let a = m.to_sr("m", 1e-9).unwrap();
        assert_eq!(a.matrix().get(0, 1), 1.0 / 3.0);
    }

    #[test]
    fn float_entries_round_trip_exactly() {
        for v in [0.1, 1.0 / 3.0, 1e-20, 123456.789, 7.0] {
            assert_eq!(Entry::from_f64(v).value().unwrap(), v);
        }
    }

    #[test]
    fn structural_errors_are_schema() {
        let p = doc(r#"{"matrices": [{"entries": [["1", "2"], ["1/2"]]}]}"#);
        let e = p.to_problem().unwrap_err();
        assert_eq!(e.kind(), ErrorKind::Schema);
        assert!(e.to_string().contains("not square"), "{e}");

        let p = doc(r#"{"matrices": [{"n": 3, "entries": [["1", "2"], ["1/2", "1"]]}]}"#);
        assert_eq!(p.to_problem().unwrap_err().kind(), ErrorKind::Schema);

        let p = doc(r#"{"matrices": [{"entries": [["1", "2/0"], ["1/2", "1"]]}]}"#);
        let e = p.to_problem().unwrap_err();
        assert!(e.to_string().contains("entry (1, 2)"), "{e}");

        assert!(ProblemDocument::from_json(r#"{"matrices": [], "extra": 1}"#).is_err());
        assert_eq!(
            doc(r#"{"matrices": []}"#).to_problem().unwrap_err().kind(),
            ErrorKind::Schema
        );
    }

    #[test]
    fn reciprocity_violation_names_the_entry() {
        let p = doc(r#"{"matrices": [{"entries": [["1", "2"], ["1", "1"]]}]}"#);
        let e = p.to_problem().unwrap_err();
        assert_eq!(e.kind(), ErrorKind::SrViolation);
        assert!(e.to_string().contains("(1, 2)"), "{e}");
    }

    #[test]
    fn criteria_variants() {
        let p = doc(r#"{"alternatives": ["x", "y"],
                "criteria": {"weights": ["1", "1/2"]},
                "matrices": [{"name": "cost", "entries": [["1", "2"], ["1/2", "1"]]},
                             {"entries": [["1", "1/3"], ["3", "1"]]}]}"#);
        let problem = p.to_problem().unwrap();
        assert_eq!(problem.criteria_names(), ["cost", "C2"]);
        assert!(
            matches!(problem.criteria(), Some(Criteria::Weights(w)) if w.as_slice() == [1.0, 0.5])
        );
        let bad = doc(r#"{"criteria": {"weights": ["1"]},
                "matrices": [{"entries": [["1", "2"], ["1/2", "1"]]},
                             {"entries": [["1", "2"], ["1/2", "1"]]}]}"#);
        assert_eq!(bad.to_problem().unwrap_err().kind(), ErrorKind::Schema);
    }

    #[test]
    fn tolerance_overrides_are_partial() {
        let p = doc(r#"{"matrices": [{"entries": [["1"]]}], "tolerances": {"tie": 0.01}}"#);
        let t = p.tolerances().unwrap();
        assert_eq!(t.tie, 0.01);
        assert_eq!(t.algebraic, Tolerances::default().algebraic);
        let p = doc(r#"{"matrices": [{"entries": [["1"]]}], "tolerances": {"tie": -1}}"#);
        assert_eq!(p.tolerances().unwrap_err().kind(), ErrorKind::Schema);
    }
}
