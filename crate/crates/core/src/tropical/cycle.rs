//! Maximal cycle geometric mean `μ(A)`.

use super::{MaxMatrix, Result, TropicalError};

/// Largest dimension accepted by [`brute_force_cycle_mean`].
pub const BRUTE_FORCE_MAX_DIM: usize = 8;

/// `μ(A)`, the largest geometric mean over all cycles of `D(A)`.
///
/// Returns `0` exactly when the digraph has no cycle.
pub fn cycle_mean(a: &MaxMatrix) -> f64 {
    log_cycle_mean(&a.log_entries(), a.dim()).exp()
}

/// Karp's maximum mean-weight cycle on a log-weight matrix (`−∞` = no edge).
///
/// Every node acts as a source (equivalently, a virtual source with
/// zero-weight edges to all nodes), so reducible graphs are handled too.
pub(crate) fn log_cycle_mean(w: &[f64], n: usize) -> f64 {
    let neg = f64::NEG_INFINITY;
    // walks[k][v]: heaviest walk with exactly k edges ending at v
    let mut walks = vec![vec![neg; n]; n + 1];
    walks[0].fill(0.0);
    for k in 1..=n {
        let (done, rest) = walks.split_at_mut(k);
        let prev = &done[k - 1];
        let cur = &mut rest[0];
        for u in 0..n {
            if prev[u] == neg {
                continue;
            }
            let row = &w[u * n..(u + 1) * n];
            for v in 0..n {
                let cand = prev[u] + row[v];
                if cand > cur[v] {
                    cur[v] = cand;
                }
            }
        }
    }
    let mut best = neg;
    for v in 0..n {
        let full = walks[n][v];
        if full == neg {
            continue;
        }
        let mut worst = f64::INFINITY;
        for (k, layer) in walks.iter().enumerate().take(n) {
            if layer[v] > neg {
                worst = worst.min((full - layer[v]) / (n - k) as f64);
            }
        }
        best = best.max(worst);
    }
    best
}

/// Enumerates every simple cycle and returns the largest `k`-th root of a
/// `k`-cycle's weight. Exponential; only for `n ≤ 8`.
pub fn brute_force_cycle_mean(a: &MaxMatrix) -> Result<f64> {
    let n = a.dim();
    if n > BRUTE_FORCE_MAX_DIM {
        return Err(TropicalError::TooLargeForEnumeration {
            n,
            limit: BRUTE_FORCE_MAX_DIM,
        });
    }
    let mut best = 0.0f64;
    let mut on_path = vec![false; n];
    for start in 0..n {
        on_path[start] = true;
        extend(a, start, start, 1.0, 1, &mut on_path, &mut best);
        on_path[start] = false;
    }
    Ok(best)
}

fn extend(
    a: &MaxMatrix,
    start: usize,
    at: usize,
    weight: f64,
    len: usize,
    on_path: &mut [bool],
    best: &mut f64,
) {
    let n = a.dim();
    // close the cycle
    let back = a.get(at, start);
    if back > 0.0 {
        let mean = (weight * back).powf(1.0 / len as f64);
        if mean > *best {
            *best = mean;
        }
    }
    // cycles are rooted at their smallest node
    for next in start + 1..n {
        let e = a.get(at, next);
        if e > 0.0 && !on_path[next] {
            on_path[next] = true;
            extend(a, start, next, weight * e, len + 1, on_path, best);
            on_path[next] = false;
        }
    }
}
