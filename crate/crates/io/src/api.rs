//! Request and response types with the handlers behind them. The service
//! serves these as JSON and the CLI prints them, so both give the same
//! numbers for the same document.
//!
//! Indices in responses (critical nodes and edges, reciprocity pairs) are
//! one-based, matching the way comparison matrices are usually written.

use maxahp_core::ahp::{
    classical_ahp, minmax_solution, pareto_point, rank_alternatives, relative_error, ParetoOptions,
    Problem, Ranking,
};
use maxahp_core::tropical::{
    critical_graph, cycle_mean, is_irreducible, max_eigenvector, principal_subeigenvector,
    spectral_profile,
};
use maxahp_core::{MaxMatrix, PositiveVector, Tolerances};
use serde::{Deserialize, Serialize};

use crate::document::{
    matrix_context, parse_weights, CriteriaDocument, Entry, MatrixDocument, ProblemDocument,
};
use crate::error::{Error, Result};

/// Size caps applied before any computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_n: usize,
    pub max_m: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_n: 64,
            max_m: 32,
        }
    }
}

impl Limits {
    pub const UNBOUNDED: Limits = Limits {
        max_n: usize::MAX,
        max_m: usize::MAX,
    };

    fn check(&self, n: usize, m: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::Schema(format!(
                "n = {n} exceeds the limit of {}",
                self.max_n
            )));
        }
        if m > self.max_m {
            return Err(Error::Schema(format!(
                "m = {m} exceeds the limit of {}",
                self.max_m
            )));
        }
        Ok(())
    }

    fn check_problem(&self, doc: &ProblemDocument) -> Result<()> {
        let (n, m) = doc.size();
        self.check(n, m)
    }
}

fn one_based(edges: &[(usize, usize)]) -> Vec<[usize; 2]> {
    edges.iter().map(|&(i, j)| [i + 1, j + 1]).collect()
}

fn labelled(r: &Ranking, labels: Option<&[String]>) -> Option<String> {
    labels.map(|l| r.with_labels(l))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HealthResponse {
    pub status: &'static str,
    pub name: &'static str,
    pub version: &'static str,
}

pub fn health() -> HealthResponse {
    HealthResponse {
        status: "ok",
        name: "maxahp",
        version: env!("CARGO_PKG_VERSION"),
    }
}

/// Per-matrix SR diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixDiagnostics {
    pub name: String,
    pub n: usize,
    pub sr: bool,
    pub non_positive: Vec<[usize; 2]>,
    pub diagonal_not_one: Vec<usize>,
    pub reciprocity_violations: Vec<[usize; 2]>,
    /// `max |a_ij a_ji − 1|`.
    pub max_reciprocity_defect: f64,
    /// `μ(A)`, the best achievable max relative error for this matrix.
    pub mu: f64,
}

fn diagnose(name: String, a: &MaxMatrix, tol: f64) -> MatrixDiagnostics {
    let n = a.dim();
    let mut d = MatrixDiagnostics {
        name,
        n,
        sr: true,
        non_positive: Vec::new(),
        diagonal_not_one: Vec::new(),
        reciprocity_violations: Vec::new(),
        max_reciprocity_defect: 0.0,
        mu: cycle_mean(a),
    };
    for i in 0..n {
        if a.get(i, i) != 1.0 {
            d.diagonal_not_one.push(i + 1);
        }
        for j in 0..n {
            if a.get(i, j) <= 0.0 {
                d.non_positive.push([i + 1, j + 1]);
            }
            if j > i {
                let defect = (a.get(i, j) * a.get(j, i) - 1.0).abs();
                d.max_reciprocity_defect = d.max_reciprocity_defect.max(defect);
                if defect > tol {
                    d.reciprocity_violations.push([i + 1, j + 1]);
                }
            }
        }
    }
    d.sr = d.non_positive.is_empty()
        && d.diagonal_not_one.is_empty()
        && d.reciprocity_violations.is_empty();
    d
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidateResponse {
    pub valid: bool,
    pub n: usize,
    pub m: usize,
    pub matrices: Vec<MatrixDiagnostics>,
    pub criteria: Option<MatrixDiagnostics>,
    /// Structural problems: size mismatches, bad weights, label counts.
    pub issues: Vec<String>,
    pub tolerances: Tolerances,
}

/// SR diagnostics for every matrix. Only unparseable input is an error;
/// SR and consistency failures are reported in the body.
pub fn validate(doc: &ProblemDocument, limits: &Limits) -> Result<ValidateResponse> {
    limits.check_problem(doc)?;
    let tol = doc.tolerances()?;
    let names = doc.criterion_names();
    let mut issues = Vec::new();
    let mut matrices = Vec::new();
    for (k, m) in doc.matrices.iter().enumerate() {
        let a = m.to_matrix(&matrix_context(k, m))?;
        matrices.push(diagnose(names[k].clone(), &a, tol.reciprocity));
    }
    if doc.matrices.is_empty() {
        issues.push("problem has no matrices".to_string());
    }
    let n = doc.alternative_names().len();
    for d in &matrices {
        if d.n != n {
            issues.push(format!(
                "{} is {}x{} but there are {n} alternatives",
                d.name, d.n, d.n
            ));
        }
    }
    let m = matrices.len();
    let criteria = match &doc.criteria {
        Some(CriteriaDocument::Matrix(c)) => {
            let a = c.to_matrix("criteria matrix")?;
            if a.dim() != m {
                issues.push(format!(
                    "criteria matrix is {0}x{0} but there are {m} matrices",
                    a.dim()
                ));
            }
            Some(diagnose("criteria".into(), &a, tol.reciprocity))
        }
        Some(CriteriaDocument::Weights(w)) => {
            match parse_weights(w, "criteria weights") {
                Ok(v) if v.len() != m => {
                    issues.push(format!("{} criteria weights for {m} matrices", v.len()))
                }
                Ok(_) => {}
                Err(e) => issues.push(e.to_string()),
            }
            None
        }
        None => None,
    };
    let valid = issues.is_empty()
        && matrices.iter().all(|d| d.sr)
        && criteria.as_ref().is_none_or(|c| c.sr);
    Ok(ValidateResponse {
        valid,
        n,
        m,
        matrices,
        criteria,
        issues,
        tolerances: tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeRequest {
    pub matrix: MatrixDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyzeResponse {
    pub n: usize,
    pub mu: f64,
    pub irreducible: bool,
    pub sr: bool,
    /// Max eigenvector with first entry one; absent for reducible input.
    pub eigenvector: Option<Vec<f64>>,
    pub ranking: Option<Ranking>,
    pub ranking_labels: Option<String>,
    pub principal_subeigenvector: Vec<f64>,
    pub critical_nodes: Vec<usize>,
    pub critical_edges: Vec<[usize; 2]>,
    pub anticritical_edges: Vec<[usize; 2]>,
    pub critical_components: Vec<Vec<usize>>,
    /// Subeigenvectors are unique up to scaling.
    pub unique: bool,
    pub tolerances: Tolerances,
}

pub fn analyze(req: &AnalyzeRequest, limits: &Limits) -> Result<AnalyzeResponse> {
    limits.check(req.matrix.dim(), 1)?;
    let tol = req.tolerances.unwrap_or_default();
    if !tol.is_valid() {
        return Err(Error::Schema(format!(
            "tolerances must be finite and nonnegative: {tol:?}"
        )));
    }
    let a = req.matrix.to_matrix("matrix")?;
    let profile = spectral_profile(&a, tol.algebraic)?;
    let graph = critical_graph(&a, tol.algebraic)?;
    let irreducible = is_irreducible(&a);
    let eigenvector = if irreducible {
        Some(max_eigenvector(&a, tol.algebraic)?)
    } else {
        None
    };
    let ranking = eigenvector.as_ref().map(|v| rank_alternatives(v, tol.tie));
    let ranking_labels = ranking
        .as_ref()
        .and_then(|r| labelled(r, req.matrix.labels.as_deref()));
    let sr = diagnose(String::new(), &a, tol.reciprocity).sr;
    let psv = principal_subeigenvector(&a)?;
    Ok(AnalyzeResponse {
        n: a.dim(),
        mu: profile.mu,
        irreducible,
        sr,
        eigenvector: eigenvector.map(PositiveVector::into_vec),
        ranking,
        ranking_labels,
        principal_subeigenvector: psv.into_vec(),
        critical_nodes: graph.nodes.iter().map(|i| i + 1).collect(),
        critical_edges: one_based(&graph.edges),
        anticritical_edges: one_based(&graph.anticritical_edges),
        critical_components: graph
            .components()
            .into_iter()
            .map(|c| c.into_iter().map(|i| i + 1).collect())
            .collect(),
        unique: profile.unique_direction,
        tolerances: tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionSummary {
    pub name: String,
    /// `μ(A_i)`, the error of this criterion's own max eigenvector.
    pub mu: f64,
    pub error_at_minmax: f64,
    pub error_at_global: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiResponse {
    pub n: usize,
    pub m: usize,
    pub mu_hat: f64,
    pub normalized_radius: f64,
    pub global_exists: bool,
    pub global_optimum: Option<Vec<f64>>,
    pub global_ranking: Option<Ranking>,
    pub minmax: Vec<f64>,
    pub minmax_ranking: Ranking,
    pub minmax_ranking_labels: String,
    pub unique_minmax: bool,
    pub criteria: Vec<CriterionSummary>,
    pub tolerances: Tolerances,
}

fn loaded(doc: &ProblemDocument, limits: &Limits) -> Result<(Problem, Tolerances)> {
    limits.check_problem(doc)?;
    Ok((doc.to_problem()?, doc.tolerances()?))
}

pub fn multi(doc: &ProblemDocument, limits: &Limits) -> Result<MultiResponse> {
    let (p, tol) = loaded(doc, limits)?;
    let res = minmax_solution(p.matrices(), &tol)?;
    let criteria = p
        .matrices()
        .iter()
        .zip(p.criteria_names())
        .zip(&res.errors)
        .map(|((a, name), &e)| {
            Ok(CriterionSummary {
                name: name.clone(),
                mu: cycle_mean(a.matrix()),
                error_at_minmax: e,
                error_at_global: match &res.global_optimum {
                    Some(x) => Some(relative_error(a.matrix(), x)?),
                    None => None,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let minmax_ranking = rank_alternatives(&res.minmax, tol.tie);
    Ok(MultiResponse {
        n: p.n(),
        m: p.m(),
        mu_hat: res.mu_hat,
        normalized_radius: res.normalized_radius,
        global_exists: res.global_optimum.is_some(),
        global_ranking: res
            .global_optimum
            .as_ref()
            .map(|x| rank_alternatives(x, tol.tie)),
        global_optimum: res.global_optimum.map(PositiveVector::into_vec),
        minmax_ranking_labels: minmax_ranking.with_labels(p.alternatives()),
        minmax_ranking,
        minmax: res.minmax.into_vec(),
        unique_minmax: res.unique_minmax,
        criteria,
        tolerances: tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParetoRequest {
    pub problem: ProblemDocument,
    /// Scalarisation weights; defaults to the criteria information.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<ParetoOptions>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaSource {
    Request,
    CriteriaWeights,
    CriteriaEigenvector,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParetoPointResponse {
    pub point: Vec<f64>,
    pub ranking: Ranking,
    pub ranking_labels: String,
    pub objective_values: Vec<f64>,
    pub weighted_value: f64,
    pub max_error: f64,
    pub start_index: usize,
    pub certificate_samples: usize,
    pub weakly_dominated: bool,
    pub dominated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParetoResponse {
    pub alpha: Vec<f64>,
    pub alpha_source: AlphaSource,
    pub mu_hat: f64,
    pub points: Vec<ParetoPointResponse>,
    /// Distinct rankings in point order.
    pub rankings: Vec<Ranking>,
    pub options: ParetoOptions,
    pub tolerances: Tolerances,
}

/// Alpha from the request, or else from the problem's criteria.
pub fn resolve_alpha(
    p: &Problem,
    requested: Option<&[Entry]>,
    tol: &Tolerances,
) -> Result<(PositiveVector, AlphaSource)> {
    if let Some(a) = requested {
        return Ok((parse_weights(a, "alpha")?, AlphaSource::Request));
    }
    let source = match p.criteria() {
        Some(maxahp_core::ahp::Criteria::Weights(_)) => AlphaSource::CriteriaWeights,
        Some(maxahp_core::ahp::Criteria::Matrix(_)) => AlphaSource::CriteriaEigenvector,
        None => {
            return Err(Error::Schema(
                "Pareto search needs alpha: give criteria information or an explicit alpha".into(),
            ))
        }
    };
    let alpha = p.alpha(tol.algebraic)?.expect("criteria present");
    Ok((alpha, source))
}

pub fn pareto(req: &ParetoRequest, limits: &Limits) -> Result<ParetoResponse> {
    let (p, tol) = loaded(&req.problem, limits)?;
    let (alpha, alpha_source) = resolve_alpha(&p, req.alpha.as_deref(), &tol)?;
    if alpha.len() != p.m() {
        return Err(Error::Schema(format!(
            "alpha has {} entries for {} matrices",
            alpha.len(),
            p.m()
        )));
    }
    let options = req.options.clone().unwrap_or_default();
    let mu_hat = cycle_mean(&maxahp_core::ahp::aggregate(p.matrices(), false)?);
    let found = pareto_point(p.matrices(), alpha.as_slice(), &options, &tol)?;
    let mut rankings: Vec<Ranking> = Vec::new();
    let points = found
        .into_iter()
        .map(|r| {
            if !rankings.contains(&r.ranking) {
                rankings.push(r.ranking.clone());
            }
            ParetoPointResponse {
                ranking_labels: r.ranking.with_labels(p.alternatives()),
                point: r.point.into_vec(),
                ranking: r.ranking,
                objective_values: r.objective_values,
                weighted_value: r.weighted_value,
                max_error: r.max_error,
                start_index: r.start_index,
                certificate_samples: r.certificate.samples,
                weakly_dominated: r.certificate.weakly_dominated,
                dominated: r.certificate.dominated,
            }
        })
        .collect();
    Ok(ParetoResponse {
        alpha: alpha.into_vec(),
        alpha_source,
        mu_hat,
        points,
        rankings,
        options,
        tolerances: tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionPerron {
    pub name: String,
    pub rho: f64,
    pub vector: Vec<f64>,
    pub ranking: Ranking,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalResponse {
    pub criteria_weights: Vec<f64>,
    pub criteria: Vec<CriterionPerron>,
    pub weights: Vec<f64>,
    pub ranking: Ranking,
    pub ranking_labels: String,
    pub tolerances: Tolerances,
}

pub fn classical(doc: &ProblemDocument, limits: &Limits) -> Result<ClassicalResponse> {
    let (p, tol) = loaded(doc, limits)?;
    let res = classical_ahp(&p, tol.tie)?;
    Ok(ClassicalResponse {
        criteria_weights: res.criteria_weights.into_vec(),
        criteria: res
            .per_criterion
            .into_iter()
            .zip(p.criteria_names())
            .map(|(c, name)| CriterionPerron {
                name: name.clone(),
                rho: c.rho,
                vector: c.vector.into_vec(),
                ranking: c.ranking,
            })
            .collect(),
        weights: res.weights.into_vec(),
        ranking_labels: res.ranking.with_labels(p.alternatives()),
        ranking: res.ranking,
        tolerances: tol,
    })
}
