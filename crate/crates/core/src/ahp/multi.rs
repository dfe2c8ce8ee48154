//! Globally optimal and min-max optimal weight vectors for a set of
//! comparison matrices.

use serde::Serialize;

use super::{relative_error, AhpError};
use crate::tolerance::Tolerances;
use crate::tropical::matrix::rel_close;
use crate::tropical::{
    critical_graph, cycle_mean, max_matmul, principal_subeigenvector, spectral_profile, MaxMatrix,
    PositiveVector, TropicalError,
};

/// Upper bound on the number of products [`brute_force_gsr`] will form.
pub const GSR_ENUMERATION_LIMIT: usize = 2_000_000;

fn check_set<M: AsRef<MaxMatrix>>(ps: &[M]) -> Result<usize, AhpError> {
    let first = ps.first().ok_or(AhpError::NoMatrices)?.as_ref().dim();
    for a in ps {
        let d = a.as_ref().dim();
        if d != first {
            return Err(TropicalError::DimensionMismatch {
                left: first,
                right: d,
            }
            .into());
        }
    }
    Ok(first)
}

/// `S = A₁ ⊕ … ⊕ A_m`, or `Ŝ = Â₁ ⊕ … ⊕ Â_m` with `Â = A/μ(A)` when
/// `normalized`.
pub fn aggregate<M: AsRef<MaxMatrix>>(ps: &[M], normalized: bool) -> Result<MaxMatrix, AhpError> {
    let n = check_set(ps)?;
    let mut s = MaxMatrix::zeros(n);
    for a in ps {
        let a = a.as_ref();
        let term = if normalized {
            let mu = cycle_mean(a);
            if mu == 0.0 {
                return Err(TropicalError::ZeroSpectralRadius.into());
            }
            a.scale(1.0 / mu)?
        } else {
            a.clone()
        };
        s = s.max_plus(&term)?;
    }
    Ok(s)
}

/// Max generalised spectral radius `μ̂(Ψ)`, computed as `μ(S)`.
pub fn gen_spectral_radius<M: AsRef<MaxMatrix>>(ps: &[M]) -> Result<f64, AhpError> {
    let s = aggregate(ps, false)?;
    if s.is_zero() {
        return Err(AhpError::AllZero);
    }
    Ok(cycle_mean(&s))
}

/// `μ(Ŝ)`; equals one exactly when a common subeigenvector exists.
pub fn normalized_radius<M: AsRef<MaxMatrix>>(ps: &[M]) -> Result<f64, AhpError> {
    Ok(cycle_mean(&aggregate(ps, true)?))
}

/// `max_{p ≤ p_max} (max_{ψ ∈ Ψ^p} μ(ψ))^{1/p}` by enumerating every product.
///
/// A lower bound for `μ̂(Ψ)` that reaches it once `p_max` covers the length
/// of a critical cycle of `S`.
pub fn brute_force_gsr<M: AsRef<MaxMatrix>>(ps: &[M], p_max: usize) -> Result<f64, AhpError> {
    let n = check_set(ps)?;
    let m = ps.len();
    let mut count = 0usize;
    let mut layer = 1usize;
    for _ in 0..p_max {
        layer = layer.saturating_mul(m);
        count = count.saturating_add(layer);
    }
    if count > GSR_ENUMERATION_LIMIT {
        return Err(AhpError::EnumerationTooLarge {
            count,
            limit: GSR_ENUMERATION_LIMIT,
        });
    }
    let logs: Vec<Vec<f64>> = ps.iter().map(|a| a.as_ref().log_entries()).collect();
    let mut best = f64::NEG_INFINITY;
    for first in &logs {
        descend(first.clone(), 1, p_max, &logs, n, &mut best);
    }
    Ok(best.exp())
}

fn descend(prod: Vec<f64>, p: usize, p_max: usize, logs: &[Vec<f64>], n: usize, best: &mut f64) {
    let mean = crate::tropical::cycle::log_cycle_mean(&prod, n) / p as f64;
    if mean > *best {
        *best = mean;
    }
    if p == p_max {
        return;
    }
    for factor in logs {
        descend(log_matmul(&prod, factor, n), p + 1, p_max, logs, n, best);
    }
}

fn log_matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut c = vec![f64::NEG_INFINITY; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == f64::NEG_INFINITY {
                continue;
            }
            for j in 0..n {
                let v = aik + b[k * n + j];
                if v > c[i * n + j] {
                    c[i * n + j] = v;
                }
            }
        }
    }
    c
}

/// A common subeigenvector `x` with `A_i ⊗ x ≤ μ(A_i) x` for every `i`, if
/// one exists (`μ(Ŝ) ≤ 1` within `tol.normalized_radius`).
pub fn global_optimum<M: AsRef<MaxMatrix>>(
    ps: &[M],
    tol: &Tolerances,
) -> Result<Option<PositiveVector>, AhpError> {
    let s_hat = aggregate(ps, true)?;
    global_from_normalized(&s_hat, tol)
}

fn global_from_normalized(
    s_hat: &MaxMatrix,
    tol: &Tolerances,
) -> Result<Option<PositiveVector>, AhpError> {
    if cycle_mean(s_hat) <= 1.0 + tol.normalized_radius {
        Ok(Some(principal_subeigenvector(s_hat)?))
    } else {
        Ok(None)
    }
}

/// `A ⊗ B = B ⊗ A` entrywise within relative `rel_tol`.
pub fn commutes(a: &MaxMatrix, b: &MaxMatrix, rel_tol: f64) -> Result<bool, AhpError> {
    let ab = max_matmul(a, b)?;
    let ba = max_matmul(b, a)?;
    Ok(ab.approx_eq(&ba, rel_tol))
}

/// Diagonal scaling `X⁻¹ A X` of one matrix, checked against
/// `μ⁻¹ ≤ (X⁻¹AX)_kl ≤ μ` and the equalities on (anti)critical edges.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingCheck {
    pub mu: f64,
    pub above_upper: Vec<(usize, usize)>,
    pub below_lower: Vec<(usize, usize)>,
    pub critical_not_tight: Vec<(usize, usize)>,
    pub anticritical_not_tight: Vec<(usize, usize)>,
}

impl ScalingCheck {
    pub fn passed(&self) -> bool {
        self.above_upper.is_empty()
            && self.below_lower.is_empty()
            && self.critical_not_tight.is_empty()
            && self.anticritical_not_tight.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VisualizationReport {
    pub matrices: Vec<ScalingCheck>,
}

impl VisualizationReport {
    pub fn passed(&self) -> bool {
        self.matrices.iter().all(ScalingCheck::passed)
    }
}

/// Checks whether `X = diag(x)` simultaneously visualises every matrix.
/// `check_tol` is the relative slack for the inequalities and equalities.
pub fn visualization_check<M: AsRef<MaxMatrix>>(
    ps: &[M],
    x: &PositiveVector,
    tol: &Tolerances,
    check_tol: f64,
) -> Result<VisualizationReport, AhpError> {
    let n = check_set(ps)?;
    if x.len() != n {
        return Err(TropicalError::DimensionMismatch {
            left: n,
            right: x.len(),
        }
        .into());
    }
    let xs = x.as_slice();
    let mut matrices = Vec::with_capacity(ps.len());
    for a in ps {
        let a = a.as_ref();
        let crit = critical_graph(a, tol.algebraic)?;
        let mu = crit.mu;
        let mut check = ScalingCheck {
            mu,
            above_upper: Vec::new(),
            below_lower: Vec::new(),
            critical_not_tight: Vec::new(),
            anticritical_not_tight: Vec::new(),
        };
        for k in 0..n {
            for l in 0..n {
                let s = a.get(k, l) * xs[l] / xs[k];
                if s > mu * (1.0 + check_tol) {
                    check.above_upper.push((k, l));
                }
                if s < (1.0 - check_tol) / mu {
                    check.below_lower.push((k, l));
                }
                if crit.is_critical_edge(k, l) && !rel_close(s, mu, check_tol) {
                    check.critical_not_tight.push((k, l));
                }
                if crit.is_anticritical_edge(k, l) && !rel_close(s, 1.0 / mu, check_tol) {
                    check.anticritical_not_tight.push((k, l));
                }
            }
        }
        matrices.push(check);
    }
    Ok(VisualizationReport { matrices })
}

/// Output of the min-max solver.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiResult {
    /// `S = ⊕ A_i`.
    pub aggregate: MaxMatrix,
    /// `μ̂(Ψ) = μ(S)`, the optimal value of the min-max problem.
    pub mu_hat: f64,
    /// `μ(Ŝ)`; one iff a globally optimal vector exists.
    pub normalized_radius: f64,
    pub global_optimum: Option<PositiveVector>,
    /// Canonical min-max optimal vector, first entry one.
    pub minmax: PositiveVector,
    pub unique_minmax: bool,
    /// `e_{A_i}(minmax)` per matrix.
    pub errors: Vec<f64>,
}

/// Solves `min_x max_i e_{A_i}(x)`. The solution set is the subeigencone of
/// `S`; the returned representative is its principal subeigenvector.
pub fn minmax_solution<M: AsRef<MaxMatrix>>(
    ps: &[M],
    tol: &Tolerances,
) -> Result<MultiResult, AhpError> {
    let s = aggregate(ps, false)?;
    if s.is_zero() {
        return Err(AhpError::AllZero);
    }
    let profile = spectral_profile(&s, tol.algebraic)?;
    let minmax = principal_subeigenvector(&s)?;
    let s_hat = aggregate(ps, true)?;
    let normalized_radius = cycle_mean(&s_hat);
    let global = global_from_normalized(&s_hat, tol)?;
    let errors = ps
        .iter()
        .map(|a| relative_error(a.as_ref(), &minmax))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MultiResult {
        aggregate: s,
        mu_hat: profile.mu,
        normalized_radius,
        global_optimum: global,
        minmax,
        unique_minmax: profile.unique_direction,
        errors,
    })
}

/// `x ∈ C_{Ψ,r}`: every `e_{A_i}(x) ≤ r`, with relative slack `rel_tol`.
pub fn membership_c_psi<M: AsRef<MaxMatrix>>(
    ps: &[M],
    x: &PositiveVector,
    r: f64,
    rel_tol: f64,
) -> Result<bool, AhpError> {
    check_set(ps)?;
    for a in ps {
        if relative_error(a.as_ref(), x)? > r * (1.0 + rel_tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Same set tested through the aggregate: `e_S(x) ≤ r`.
pub fn membership_via_aggregate<M: AsRef<MaxMatrix>>(
    ps: &[M],
    x: &PositiveVector,
    r: f64,
    rel_tol: f64,
) -> Result<bool, AhpError> {
    let s = aggregate(ps, false)?;
    Ok(relative_error(&s, x)? <= r * (1.0 + rel_tol))
}
