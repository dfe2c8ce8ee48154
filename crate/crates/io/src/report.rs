//! CSV report tables.
//!
//! | file           | header                               |
//! |----------------|--------------------------------------|
//! | `weights.csv`  | `method,alternative,label,weight`    |
//! | `errors.csv`   | `method,criterion,error`             |
//! | `rankings.csv` | `method,ranking,labels`              |
//! | `scatter.csv`  | `set,index,e_a,e_b`                  |
//!
//! Methods are `classical`, `eigenvector:<criterion>`, `minmax`, `global`
//! and `pareto:<k>`. Every weight vector has first entry one except the
//! classical one, which is a combination of unit-length Perron vectors.
//!
//! The scatter table plots the errors against the first two matrices `A`
//! and `B`. Sets: `c_a` and `c_b` sample the optimal cones of `A` and `B`,
//! `interior` samples a log-box around the min-max point, `minmax` is that
//! point, and `pareto` holds solver points for a sweep of weights on `A`
//! and `B`. It is omitted when the problem has a single matrix.

use std::path::Path;

use maxahp_core::ahp::{
    classical_ahp, minmax_solution, pareto_point, rank_alternatives, relative_error, ParetoOptions,
    Problem, Ranking, SrMatrix,
};
use maxahp_core::tropical::{kleene_star, max_eigenvector};
use maxahp_core::{MaxMatrix, PositiveVector, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ReportOptions {
    pub seed: u64,
    /// Samples per scatter set.
    pub samples: usize,
    /// Half-width of the `interior` log-box.
    pub radius: f64,
    /// Number of weight pairs in the `pareto` sweep.
    pub sweep: usize,
    pub pareto: ParetoOptions,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            samples: 200,
            radius: 0.5,
            sweep: 5,
            pareto: ParetoOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightRow {
    pub method: String,
    pub alternative: usize,
    pub label: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRow {
    pub method: String,
    pub criterion: String,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankingRow {
    pub method: String,
    pub ranking: Ranking,
    pub labels: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatterRow {
    pub set: &'static str,
    pub index: usize,
    pub e_a: f64,
    pub e_b: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReportTables {
    pub weights: Vec<WeightRow>,
    pub errors: Vec<ErrorRow>,
    pub rankings: Vec<RankingRow>,
    pub scatter: Vec<ScatterRow>,
}

impl ReportTables {
    /// Scatter rows of one set.
    pub fn scatter_set<'a>(&'a self, set: &'a str) -> impl Iterator<Item = &'a ScatterRow> + 'a {
        self.scatter.iter().filter(move |r| r.set == set)
    }
}

struct Collector<'a> {
    p: &'a Problem,
    tol: &'a Tolerances,
    tables: ReportTables,
}

impl Collector<'_> {
    fn add(&mut self, method: String, x: &PositiveVector) -> Result<()> {
        let labels = self.p.alternatives();
        for (i, &w) in x.as_slice().iter().enumerate() {
            self.tables.weights.push(WeightRow {
                method: method.clone(),
                alternative: i + 1,
                label: labels[i].clone(),
                weight: w,
            });
        }
        for (a, name) in self.p.matrices().iter().zip(self.p.criteria_names()) {
            self.tables.errors.push(ErrorRow {
                method: method.clone(),
                criterion: name.clone(),
                error: relative_error(a.matrix(), x)?,
            });
        }
        let ranking = rank_alternatives(x, self.tol.tie);
        self.tables.rankings.push(RankingRow {
            method,
            labels: ranking.with_labels(labels),
            ranking,
        });
        Ok(())
    }
}

/// Alpha for the report's Pareto rows: the problem's own, else uniform.
fn report_alpha(p: &Problem, tol: &Tolerances) -> Result<PositiveVector> {
    Ok(p.alpha(tol.algebraic)?
        .unwrap_or_else(|| PositiveVector::ones(p.m())))
}

pub fn build_report(p: &Problem, tol: &Tolerances, opts: &ReportOptions) -> Result<ReportTables> {
    let mut c = Collector {
        p,
        tol,
        tables: ReportTables::default(),
    };
    if p.criteria().is_some() {
        let classical = classical_ahp(p, tol.tie)?;
        c.add("classical".into(), &classical.weights)?;
    }
    for (a, name) in p.matrices().iter().zip(p.criteria_names()) {
        c.add(
            format!("eigenvector:{name}"),
            &max_eigenvector(a.matrix(), tol.algebraic)?,
        )?;
    }
    let multi = minmax_solution(p.matrices(), tol)?;
    c.add("minmax".into(), &multi.minmax)?;
    if let Some(g) = &multi.global_optimum {
        c.add("global".into(), g)?;
    }
    let alpha = report_alpha(p, tol)?;
    for (k, r) in pareto_point(p.matrices(), alpha.as_slice(), &opts.pareto, tol)?
        .iter()
        .enumerate()
    {
        c.add(format!("pareto:{}", k + 1), &r.point)?;
    }
    let mut tables = c.tables;
    if let [a, b, ..] = p.matrices() {
        tables.scatter = scatter(a, b, &multi.minmax, tol, opts)?;
    }
    Ok(tables)
}

/// Random max-combination of the columns of `(A/μ(A))*`; each such vector
/// attains `e_A = μ(A)`.
fn cone_sample(star: &MaxMatrix, rng: &mut ChaCha8Rng) -> Result<PositiveVector> {
    let n = star.dim();
    let coef: Vec<f64> = (0..n)
        .map(|_| (-rng.gen_range(0.0..3.0f64)).exp())
        .collect();
    let x: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|j| coef[j] * star.get(i, j)).fold(0.0, f64::max))
        .collect();
    Ok(PositiveVector::new(x)?.normalized_first())
}

fn scatter(
    a: &SrMatrix,
    b: &SrMatrix,
    minmax: &PositiveVector,
    tol: &Tolerances,
    opts: &ReportOptions,
) -> Result<Vec<ScatterRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut rows = Vec::new();
    let push = |rows: &mut Vec<ScatterRow>, set, index, x: &PositiveVector| -> Result<()> {
        rows.push(ScatterRow {
            set,
            index,
            e_a: relative_error(a.matrix(), x)?,
            e_b: relative_error(b.matrix(), x)?,
        });
        Ok(())
    };
    for (set, m) in [("c_a", a), ("c_b", b)] {
        let mu = maxahp_core::tropical::cycle_mean(m.matrix());
        let star = kleene_star(&m.matrix().scale(1.0 / mu)?, tol.algebraic)?;
        for k in 0..opts.samples {
            let x = cone_sample(&star, &mut rng)?;
            push(&mut rows, set, k, &x)?;
        }
    }
    for k in 0..opts.samples {
        let x: Vec<f64> = minmax
            .as_slice()
            .iter()
            .map(|v| v * rng.gen_range(-opts.radius..=opts.radius).exp())
            .collect();
        push(
            &mut rows,
            "interior",
            k,
            &PositiveVector::new(x)?.normalized_first(),
        )?;
    }
    push(&mut rows, "minmax", 0, minmax)?;
    let pair = [a.clone(), b.clone()];
    let mut seen: Vec<PositiveVector> = Vec::new();
    for s in 0..opts.sweep.max(1) {
        let t = (s as f64 + 1.0) / (opts.sweep.max(1) as f64 + 1.0);
        for r in pareto_point(&pair, &[t, 1.0 - t], &opts.pareto, tol)? {
            if !seen
                .iter()
                .any(|x| x.max_rel_diff(&r.point) <= opts.pareto.proximity)
            {
                push(&mut rows, "pareto", seen.len(), &r.point)?;
                seen.push(r.point);
            }
        }
    }
    Ok(rows)
}

fn write_table<T: Serialize>(dir: &Path, file: &str, rows: &[T], header: &[&str]) -> Result<()> {
    let path = dir.join(file);
    let mut w = csv::Writer::from_path(&path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Write {
            path: path.clone(),
            source,
        },
        other => Error::Schema(format!("{other:?}")),
    })?;
    if rows.is_empty() {
        w.write_record(header)?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|source| Error::Write { path, source })?;
    Ok(())
}

/// Writes the four tables into `dir`, creating it if needed. Returns the
/// file names written.
pub fn write_report(dir: &Path, tables: &ReportTables) -> Result<Vec<&'static str>> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Write {
        path: dir.to_path_buf(),
        source,
    })?;
    write_table(
        dir,
        "weights.csv",
        &tables.weights,
        &["method", "alternative", "label", "weight"],
    )?;
    write_table(
        dir,
        "errors.csv",
        &tables.errors,
        &["method", "criterion", "error"],
    )?;
    write_table(
        dir,
        "rankings.csv",
        &tables.rankings,
        &["method", "ranking", "labels"],
    )?;
    write_table(
        dir,
        "scatter.csv",
        &tables.scatter,
        &["set", "index", "e_a", "e_b"],
    )?;
    Ok(vec![
        "weights.csv",
        "errors.csv",
        "rankings.csv",
        "scatter.csv",
    ])
}
