use serde::Serialize;

use super::{AhpError, SrMatrix};
use crate::tropical::{max_eigenvector, PositiveVector};

/// How the criteria are weighed against each other.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criteria {
    /// `m × m` comparison matrix between criteria.
    Matrix(SrMatrix),
    /// Explicit positive weights, one per criterion.
    Weights(PositiveVector),
}

/// `m` comparison matrices over the same `n` alternatives, plus optional
/// criteria information.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Problem {
    alternatives: Vec<String>,
    criteria_names: Vec<String>,
    matrices: Vec<SrMatrix>,
    criteria: Option<Criteria>,
}

impl Problem {
    pub fn new(
        alternatives: Vec<String>,
        criteria_names: Vec<String>,
        matrices: Vec<SrMatrix>,
        criteria: Option<Criteria>,
    ) -> Result<Self, AhpError> {
        let m = matrices.len();
        if m == 0 {
            return Err(AhpError::NoMatrices);
        }
        let n = alternatives.len();
        for (k, a) in matrices.iter().enumerate() {
            if a.dim() != n {
                return Err(AhpError::InvalidProblem(format!(
                    "matrix {} is {}x{} but there are {n} alternatives",
                    k + 1,
                    a.dim(),
                    a.dim()
                )));
            }
        }
        if criteria_names.len() != m {
            return Err(AhpError::InvalidProblem(format!(
                "{} criterion names for {m} matrices",
                criteria_names.len()
            )));
        }
        let criteria_dim = match &criteria {
            Some(Criteria::Matrix(c)) => Some(c.dim()),
            Some(Criteria::Weights(w)) => Some(w.len()),
            None => None,
        };
        if let Some(d) = criteria_dim {
            if d != m {
                return Err(AhpError::InvalidProblem(format!(
                    "criteria information has dimension {d} but there are {m} matrices"
                )));
            }
        }
        Ok(Self {
            alternatives,
            criteria_names,
            matrices,
            criteria,
        })
    }

    /// Problem with default names `1..n` and `C1..Cm`.
    pub fn from_matrices(
        matrices: Vec<SrMatrix>,
        criteria: Option<Criteria>,
    ) -> Result<Self, AhpError> {
        let n = matrices.first().map_or(0, SrMatrix::dim);
        let alternatives = (1..=n).map(|i| i.to_string()).collect();
        let criteria_names = (1..=matrices.len()).map(|k| format!("C{k}")).collect();
        Self::new(alternatives, criteria_names, matrices, criteria)
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria_names(&self) -> &[String] {
        &self.criteria_names
    }

    pub fn matrices(&self) -> &[SrMatrix] {
        &self.matrices
    }

    pub fn criteria(&self) -> Option<&Criteria> {
        self.criteria.as_ref()
    }

    pub fn n(&self) -> usize {
        self.alternatives.len()
    }

    pub fn m(&self) -> usize {
        self.matrices.len()
    }

    /// Scalarisation weights for the Pareto search: explicit weights as
    /// given, or the max eigenvector of the criteria matrix with `α₁ = 1`.
    pub fn alpha(&self, rel_tol: f64) -> Result<Option<PositiveVector>, AhpError> {
        match &self.criteria {
            Some(Criteria::Weights(w)) => Ok(Some(w.clone())),
            Some(Criteria::Matrix(c)) => Ok(Some(max_eigenvector(c.matrix(), rel_tol)?)),
            None => Ok(None),
        }
    }
}
