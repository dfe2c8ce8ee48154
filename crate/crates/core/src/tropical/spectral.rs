//! Eigen- and subeigenvector structure.

use serde::{Deserialize, Serialize};

use super::critical::{critical_from_logs, is_irreducible};
use super::cycle::log_cycle_mean;
use super::star::normalized_log_star;
use super::{CriticalGraph, MaxMatrix, PositiveVector, Result, TropicalError};

/// Max-algebraic spectral data of a nonzero matrix.
///
/// `star` is the Kleene star of `Â = A/μ(A)`. The subeigencone
/// `{x ≥ 0 : A ⊗ x ≤ μ(A) x}` is the max-linear span of `basis`: one star
/// column per strongly connected component of the critical graph (its
/// smallest node) plus the columns of all non-critical nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralProfile {
    pub mu: f64,
    pub star: MaxMatrix,
    pub critical: CriticalGraph,
    pub basis_indices: Vec<usize>,
    pub basis: Vec<Vec<f64>>,
    /// The normalised subeigenvector is unique: the critical graph covers
    /// every node and is strongly connected.
    pub unique_direction: bool,
}

struct LogSpectrum {
    n: usize,
    logs: Vec<f64>,
    log_mu: f64,
    star: Vec<f64>,
}

fn log_spectrum(a: &MaxMatrix) -> Result<LogSpectrum> {
    let n = a.dim();
    let logs = a.log_entries();
    let log_mu = log_cycle_mean(&logs, n);
    if log_mu == f64::NEG_INFINITY {
        return Err(TropicalError::ZeroSpectralRadius);
    }
    let star = normalized_log_star(&logs, n, log_mu);
    Ok(LogSpectrum {
        n,
        logs,
        log_mu,
        star,
    })
}

pub fn spectral_profile(a: &MaxMatrix, rel_tol: f64) -> Result<SpectralProfile> {
    if a.is_zero() {
        return Err(TropicalError::ZeroMatrix);
    }
    let LogSpectrum {
        n,
        logs,
        log_mu,
        star,
    } = log_spectrum(a)?;
    let critical = critical_from_logs(&logs, &star, n, log_mu, rel_tol);
    let mut basis_indices: Vec<usize> = critical.components().iter().map(|c| c[0]).collect();
    basis_indices.extend((0..n).filter(|&i| !critical.is_critical_node(i)));
    basis_indices.sort_unstable();
    let star = MaxMatrix::from_log_entries(n, &star)?;
    let basis = basis_indices.iter().map(|&j| star.column(j)).collect();
    let unique_direction = critical.covers_all_nodes() && critical.is_connected();
    Ok(SpectralProfile {
        mu: log_mu.exp(),
        star,
        critical,
        basis_indices,
        basis,
        unique_direction,
    })
}

/// Entrywise maximum of the columns of `(A/μ(A))*`, scaled so the first
/// entry is one. Always positive and satisfies `A ⊗ x ≤ μ(A) x`.
pub fn principal_subeigenvector(a: &MaxMatrix) -> Result<PositiveVector> {
    let LogSpectrum { n, star, .. } = log_spectrum(a)?;
    let z: Vec<f64> = (0..n)
        .map(|i| {
            star[i * n..(i + 1) * n]
                .iter()
                .copied()
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let mut v: Vec<f64> = z.iter().map(|zi| (zi - z[0]).exp()).collect();
    v[0] = 1.0;
    PositiveVector::new(v)
}

/// Max eigenvector of an irreducible matrix: the star column of the
/// smallest critical node, scaled so the first entry is one.
pub fn max_eigenvector(a: &MaxMatrix, rel_tol: f64) -> Result<PositiveVector> {
    if !is_irreducible(a) {
        return Err(TropicalError::NotIrreducible);
    }
    let LogSpectrum {
        n,
        logs,
        log_mu,
        star,
    } = log_spectrum(a)?;
    let critical = critical_from_logs(&logs, &star, n, log_mu, rel_tol);
    let col = critical.nodes[0];
    let first = star[col];
    let mut v: Vec<f64> = (0..n).map(|i| (star[i * n + col] - first).exp()).collect();
    v[0] = 1.0;
    PositiveVector::new(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::{cycle_mean, max_matvec};
    use approx::assert_relative_eq;

    #[test]
    fn transitive_matrix_has_one_direction() {
        let w = [2.0, 0.5, 1.25, 4.0];
        let t = MaxMatrix::from_fn(4, |i, j| w[i] / w[j]).unwrap();
        let p = spectral_profile(&t, 1e-9).unwrap();
        assert_relative_eq!(p.mu, 1.0, max_relative = 1e-12);
        assert!(p.unique_direction);
        assert_eq!(p.basis_indices, vec![0]);
        for (b, wi) in p.basis[0].iter().zip(w) {
            assert_relative_eq!(b / p.basis[0][0], wi / w[0], max_relative = 1e-12);
        }
        let v = max_eigenvector(&t, 1e-9).unwrap();
        for (vi, wi) in v.as_slice().iter().zip(w) {
            assert_relative_eq!(*vi, wi / w[0], max_relative = 1e-12);
        }
    }

    #[test]
    fn block_diagonal_has_two_directions() {
        let j = 1.0;
        let a = MaxMatrix::from_rows(vec![
            vec![j, j, 0.0, 0.0],
            vec![j, j, 0.0, 0.0],
            vec![0.0, 0.0, j, j],
            vec![0.0, 0.0, j, j],
        ])
        .unwrap();
        let p = spectral_profile(&a, 1e-9).unwrap();
        assert_eq!(p.basis_indices, vec![0, 2]);
        assert!(!p.unique_direction);
        assert!(matches!(
            max_eigenvector(&a, 1e-9),
            Err(TropicalError::NotIrreducible)
        ));
    }

    #[test]
    fn non_critical_nodes_join_the_basis() {
        // node 2 only reaches the critical loop at node 0 through weak edges
        let a = MaxMatrix::from_rows(vec![
            vec![2.0, 1.0, 0.5],
            vec![1.0, 1.0, 0.5],
            vec![0.5, 0.5, 0.5],
        ])
        .unwrap();
        let p = spectral_profile(&a, 1e-9).unwrap();
        assert_eq!(p.critical.nodes, vec![0]);
        assert_eq!(p.basis_indices, vec![0, 1, 2]);
        assert!(!p.unique_direction);
        let hat = a.scale(1.0 / p.mu).unwrap();
        for b in &p.basis {
            let bv = PositiveVector::new(b.clone()).unwrap();
            let y = max_matvec(&hat, &bv).unwrap();
            for (yi, bi) in y.iter().zip(b) {
                assert!(*yi <= bi * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn identity_subeigenvector_is_ones() {
        let x = principal_subeigenvector(&MaxMatrix::identity(3)).unwrap();
        assert_eq!(x.as_slice(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn zero_matrix_errors() {
        let z = MaxMatrix::zeros(2);
        assert_eq!(spectral_profile(&z, 1e-9), Err(TropicalError::ZeroMatrix));
        assert_eq!(
            principal_subeigenvector(&z),
            Err(TropicalError::ZeroSpectralRadius)
        );
    }

    #[test]
    fn eigenvector_residual_is_tiny() {
        let a = MaxMatrix::from_rows(vec![
            vec![0.3, 4.0, 0.0],
            vec![0.0, 0.1, 2.5],
            vec![1.7, 0.2, 0.9],
        ])
        .unwrap();
        let mu = cycle_mean(&a);
        let v = max_eigenvector(&a, 1e-9).unwrap();
        let y = max_matvec(&a, &v).unwrap();
        for (yi, vi) in y.iter().zip(v.as_slice()) {
            assert_relative_eq!(*yi, mu * vi, max_relative = 1e-9);
        }
    }
}
