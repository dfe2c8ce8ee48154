//! Max-times semiring linear algebra.

pub(crate) mod critical;
pub(crate) mod cycle;
pub(crate) mod matrix;
mod spectral;
mod star;

pub use critical::{critical_graph, is_irreducible, strongly_connected_components, CriticalGraph};
pub use cycle::{brute_force_cycle_mean, cycle_mean, BRUTE_FORCE_MAX_DIM};
pub use matrix::{max_matmul, max_matvec, MaxMatrix, PositiveVector};
pub use spectral::{max_eigenvector, principal_subeigenvector, spectral_profile, SpectralProfile};
pub use star::kleene_star;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TropicalError {
    #[error("matrix must have at least one row")]
    Empty,
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row}, {col}) = {value} is not a finite nonnegative number")]
    InvalidEntry { row: usize, col: usize, value: f64 },
    #[error("vector entry {index} = {value} is not a finite positive number")]
    NotPositive { index: usize, value: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("spectral radius {mu} exceeds one; the Kleene star diverges")]
    SpectralRadiusExceedsOne { mu: f64 },
    #[error("spectral radius is zero (the digraph has no cycle)")]
    ZeroSpectralRadius,
    #[error("operation requires an irreducible matrix")]
    NotIrreducible,
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("dimension {n} is too large for exhaustive enumeration (limit {limit})")]
    TooLargeForEnumeration { n: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, TropicalError>;

/// Natural log with `0 ↦ −∞`.
#[inline]
pub(crate) fn ln0(x: f64) -> f64 {
    if x > 0.0 {
        x.ln()
    } else {
        f64::NEG_INFINITY
    }
}

/// Floyd–Warshall style max-weight closure in the log domain.
///
/// `d[i*n + j]` on entry holds the log-weight of edge `(i, j)`; on exit it
/// holds the best path weight from `i` to `j` of length at least zero
/// (the diagonal is raised to at least `0`).
pub(crate) fn log_closure(d: &mut [f64], n: usize) {
    for i in 0..n {
        let ii = i * n + i;
        if d[ii] < 0.0 {
            d[ii] = 0.0;
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            if dik == f64::NEG_INFINITY {
                continue;
            }
            for j in 0..n {
                let cand = dik + d[k * n + j];
                if cand > d[i * n + j] {
                    d[i * n + j] = cand;
                }
            }
        }
    }
}
