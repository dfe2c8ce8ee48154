//! Symmetrically reciprocal comparison matrices and the relative error.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::tropical::{self, MaxMatrix, PositiveVector, TropicalError};

/// Why a matrix is not symmetrically reciprocal. Coordinates are zero-based
/// in the value and printed one-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SrError {
    #[error("entries must be positive; offending entries: {}", Pairs(.0))]
    NotPositive(Vec<(usize, usize)>),
    #[error("diagonal entries must equal 1; offending rows: {}", Rows(.0))]
    DiagonalNotOne(Vec<usize>),
    #[error("a_ij * a_ji must equal 1; offending pairs: {}", Pairs(.0))]
    ReciprocityViolated(Vec<(usize, usize)>),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

struct Pairs<'a>(&'a [(usize, usize)]);

impl fmt::Display for Pairs<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(i, j)| format!("({}, {})", i + 1, j + 1))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

struct Rows<'a>(&'a [usize]);

impl fmt::Display for Rows<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        f.write_str(&parts.join(", "))
    }
}

/// Positive matrix with unit diagonal and `a_ij · a_ji = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SrMatrix {
    matrix: MaxMatrix,
    labels: Vec<String>,
}

impl SrMatrix {
    /// Labels default to `"1"`, `"2"`, …
    pub fn validate(
        matrix: MaxMatrix,
        labels: Option<Vec<String>>,
        reciprocity_tol: f64,
    ) -> Result<Self, SrError> {
        let n = matrix.dim();
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(SrError::LabelCount {
                    expected: n,
                    got: l.len(),
                })
            }
            Some(l) => l,
            None => (1..=n).map(|i| i.to_string()).collect(),
        };
        let mut non_positive = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if matrix.get(i, j) <= 0.0 {
                    non_positive.push((i, j));
                }
            }
        }
        if !non_positive.is_empty() {
            return Err(SrError::NotPositive(non_positive));
        }
        let bad_diag: Vec<usize> = (0..n).filter(|&i| matrix.get(i, i) != 1.0).collect();
        if !bad_diag.is_empty() {
            return Err(SrError::DiagonalNotOne(bad_diag));
        }
        let mut bad_pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if (matrix.get(i, j) * matrix.get(j, i) - 1.0).abs() > reciprocity_tol {
                    bad_pairs.push((i, j));
                }
            }
        }
        if !bad_pairs.is_empty() {
            return Err(SrError::ReciprocityViolated(bad_pairs));
        }
        Ok(Self { matrix, labels })
    }

    pub fn matrix(&self) -> &MaxMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn into_matrix(self) -> MaxMatrix {
        self.matrix
    }
}

impl AsRef<MaxMatrix> for SrMatrix {
    fn as_ref(&self) -> &MaxMatrix {
        &self.matrix
    }
}

pub fn validate_sr(
    matrix: MaxMatrix,
    labels: Option<Vec<String>>,
    reciprocity_tol: f64,
) -> Result<SrMatrix, SrError> {
    SrMatrix::validate(matrix, labels, reciprocity_tol)
}

/// `e_A(x) = max_{i,j} a_ij x_j / x_i`. Invariant under positive rescaling
/// of `x`.
pub fn relative_error(a: &MaxMatrix, x: &PositiveVector) -> Result<f64, TropicalError> {
    let n = a.dim();
    if x.len() != n {
        return Err(TropicalError::DimensionMismatch {
            left: n,
            right: x.len(),
        });
    }
    let x = x.as_slice();
    let mut best = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let e = a.get(i, j) * x[j] / x[i];
            if e > best {
                best = e;
            }
        }
    }
    Ok(best)
}

/// Transitive matrix `t_ij = w_i / w_j`.
pub fn transitive_from_weights(w: &PositiveVector) -> SrMatrix {
    let w = w.as_slice();
    let n = w.len();
    let matrix = MaxMatrix::from_fn(n, |i, j| if i == j { 1.0 } else { w[i] / w[j] })
        .expect("ratios of positive finite weights are positive");
    SrMatrix {
        matrix,
        labels: (1..=n).map(|i| i.to_string()).collect(),
    }
}

/// `μ(A) ≥ 1` for every SR matrix; exposed for diagnostics.
pub fn sr_spectral_radius(a: &SrMatrix) -> f64 {
    tropical::cycle_mean(&a.matrix)
}
