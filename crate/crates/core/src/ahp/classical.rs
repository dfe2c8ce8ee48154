//! Classical (plus-times) Perron pipeline.

use serde::Serialize;

use super::{rank_alternatives, AhpError, Criteria, Problem, Ranking, SrMatrix};
use crate::tropical::PositiveVector;

const MAX_ITERS: usize = 10_000;
const STEP_TOL: f64 = 1e-14;

/// Dominant eigenpair of a positive matrix by power iteration.
///
/// The vector has unit Euclidean length, matching the usual printed
/// convention for AHP priority vectors.
pub fn perron_vector(a: &SrMatrix) -> Result<(f64, PositiveVector), AhpError> {
    let m = a.matrix();
    let n = m.dim();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut next = vec![0.0; n];
    for _ in 0..MAX_ITERS {
        for (i, out) in next.iter_mut().enumerate() {
            *out = m.row(i).iter().zip(&v).map(|(a, x)| a * x).sum();
        }
        let norm = next.iter().map(|x| x * x).sum::<f64>().sqrt();
        next.iter_mut().for_each(|x| *x /= norm);
        let step = next
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut v, &mut next);
        if step < STEP_TOL {
            return Ok((norm, PositiveVector::new(v)?));
        }
    }
    Err(AhpError::NoConvergence(MAX_ITERS))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionVector {
    pub rho: f64,
    pub vector: PositiveVector,
    pub ranking: Ranking,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalResult {
    pub criteria_weights: PositiveVector,
    pub per_criterion: Vec<CriterionVector>,
    pub weights: PositiveVector,
    pub ranking: Ranking,
}

/// `w = Σ c_i v⁽ⁱ⁾` with `c` the Perron vector of the criteria matrix (or
/// the explicit weights) and `v⁽ⁱ⁾` the Perron vectors of the criteria.
pub fn classical_ahp(p: &Problem, tie_tol: f64) -> Result<ClassicalResult, AhpError> {
    let c = match p.criteria() {
        Some(Criteria::Matrix(c)) => perron_vector(c)?.1,
        Some(Criteria::Weights(w)) => w.clone(),
        None => return Err(AhpError::MissingCriteria),
    };
    let per_criterion = p
        .matrices()
        .iter()
        .map(|a| {
            let (rho, vector) = perron_vector(a)?;
            let ranking = rank_alternatives(&vector, tie_tol);
            Ok(CriterionVector {
                rho,
                vector,
                ranking,
            })
        })
        .collect::<Result<Vec<_>, AhpError>>()?;
    let mut w = vec![0.0; p.n()];
    for (ci, cv) in c.as_slice().iter().zip(&per_criterion) {
        for (wj, vj) in w.iter_mut().zip(cv.vector.as_slice()) {
            *wj += ci * vj;
        }
    }
    let weights = PositiveVector::new(w)?;
    let ranking = rank_alternatives(&weights, tie_tol);
    Ok(ClassicalResult {
        criteria_weights: c,
        per_criterion,
        weights,
        ranking,
    })
}
