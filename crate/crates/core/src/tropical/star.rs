use super::cycle::log_cycle_mean;
use super::{log_closure, MaxMatrix, Result, TropicalError};

/// Kleene star `A* = I ⊕ A ⊕ … ⊕ A^{n−1}`.
///
/// `a*_ij` is the heaviest path weight from `i` to `j`. Requires
/// `μ(A) ≤ 1 + rel_tol`; beyond that the series diverges.
pub fn kleene_star(a: &MaxMatrix, rel_tol: f64) -> Result<MaxMatrix> {
    let n = a.dim();
    let mut logs = a.log_entries();
    let mu = log_cycle_mean(&logs, n).exp();
    if mu > 1.0 + rel_tol {
        return Err(TropicalError::SpectralRadiusExceedsOne { mu });
    }
    log_closure(&mut logs, n);
    MaxMatrix::from_log_entries(n, &logs)
}

/// Star of `A / μ(A)` in the log domain, given the log entries of `A` and
/// `ln μ(A)`.
pub(crate) fn normalized_log_star(logs: &[f64], n: usize, log_mu: f64) -> Vec<f64> {
    let mut d: Vec<f64> = logs.iter().map(|l| l - log_mu).collect();
    log_closure(&mut d, n);
    d
}
