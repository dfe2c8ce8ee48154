//! Critical and anticritical graphs, irreducibility.

use serde::{Deserialize, Serialize};

use super::cycle::log_cycle_mean;
use super::star::normalized_log_star;
use super::{MaxMatrix, Result, TropicalError};

/// Nodes and edges lying on cycles that attain `μ(A)`.
///
/// Indices are zero-based and sorted. `anticritical_edges` holds the
/// reversals of `edges`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalGraph {
    pub dim: usize,
    pub mu: f64,
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub anticritical_edges: Vec<(usize, usize)>,
}

impl CriticalGraph {
    pub fn is_critical_node(&self, i: usize) -> bool {
        self.nodes.binary_search(&i).is_ok()
    }

    pub fn is_critical_edge(&self, i: usize, j: usize) -> bool {
        self.edges.binary_search(&(i, j)).is_ok()
    }

    pub fn is_anticritical_edge(&self, i: usize, j: usize) -> bool {
        self.anticritical_edges.binary_search(&(i, j)).is_ok()
    }

    pub fn covers_all_nodes(&self) -> bool {
        self.nodes.len() == self.dim
    }

    /// Strongly connected components of the critical digraph, each sorted,
    /// ordered by their smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let comps = strongly_connected_components(self.dim, |i, j| self.is_critical_edge(i, j));
        comps
            .into_iter()
            .filter(|c| self.is_critical_node(c[0]))
            .collect()
    }

    /// `A^C` irreducible on its node set.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

/// Critical graph of `A`.
///
/// With `Â = A/μ(A)` and `Â⁺ = Â ⊗ Â*`: node `i` is critical iff
/// `(Â⁺)_ii = 1`, edge `(i, j)` is critical iff `â_ij · (Â⁺)_ji = 1`, both up
/// to relative tolerance `rel_tol`.
pub fn critical_graph(a: &MaxMatrix, rel_tol: f64) -> Result<CriticalGraph> {
    let n = a.dim();
    let logs = a.log_entries();
    let log_mu = log_cycle_mean(&logs, n);
    if log_mu == f64::NEG_INFINITY {
        return Err(TropicalError::ZeroSpectralRadius);
    }
    let star = normalized_log_star(&logs, n, log_mu);
    Ok(critical_from_logs(&logs, &star, n, log_mu, rel_tol))
}

pub(crate) fn critical_from_logs(
    logs: &[f64],
    star: &[f64],
    n: usize,
    log_mu: f64,
    rel_tol: f64,
) -> CriticalGraph {
    // |ln(1 + t)| ≈ t for the tolerances in use
    let tol = rel_tol.ln_1p();
    let hat = |i: usize, j: usize| logs[i * n + j] - log_mu;
    let plus = |i: usize, j: usize| {
        (0..n)
            .map(|k| hat(i, k) + star[k * n + j])
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let plus_diag: Vec<f64> = (0..n).map(|i| plus(i, i)).collect();
    let nodes: Vec<usize> = (0..n).filter(|&i| plus_diag[i].abs() <= tol).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let back = if i == j {
                plus_diag[i]
            } else {
                star[j * n + i]
            };
            let w = hat(i, j) + back;
            if w.is_finite() && w.abs() <= tol {
                edges.push((i, j));
            }
        }
    }
    let mut anticritical_edges: Vec<(usize, usize)> = edges.iter().map(|&(i, j)| (j, i)).collect();
    anticritical_edges.sort_unstable();
    CriticalGraph {
        dim: n,
        mu: log_mu.exp(),
        nodes,
        edges,
        anticritical_edges,
    }
}

/// `D(A)` strongly connected. A single node counts as irreducible.
pub fn is_irreducible(a: &MaxMatrix) -> bool {
    let n = a.dim();
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for (v, s) in seen.iter_mut().enumerate() {
                let w = if forward { a.get(u, v) } else { a.get(v, u) };
                if w > 0.0 && !*s {
                    *s = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

/// Strongly connected components of the digraph on `0..n` with edge
/// predicate `edge`, via transitive closure. Components are sorted and
/// ordered by their smallest node.
pub fn strongly_connected_components(
    n: usize,
    edge: impl Fn(usize, usize) -> bool,
) -> Vec<Vec<usize>> {
    let mut reach = vec![false; n * n];
    for i in 0..n {
        reach[i * n + i] = true;
        for j in 0..n {
            if edge(i, j) {
                reach[i * n + j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i * n + k] {
                for j in 0..n {
                    if reach[k * n + j] {
                        reach[i * n + j] = true;
                    }
                }
            }
        }
    }
    let mut assigned = vec![false; n];
    let mut comps = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let comp: Vec<usize> = (i..n)
            .filter(|&j| reach[i * n + j] && reach[j * n + i])
            .collect();
        for &j in &comp {
            assigned[j] = true;
        }
        comps.push(comp);
    }
    comps
}
