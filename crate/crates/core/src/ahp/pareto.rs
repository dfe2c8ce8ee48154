//! Pareto optimal weight vectors.
//!
//! Each objective `e_{A_i}(x) = max_{k,l} a_kl x_l / x_k` becomes
//! `exp(max of affine forms)` in `y = ln x`, so any positive combination
//! `Σ α_i e_{A_i}` is convex in log coordinates. Minimising that sum over
//! the normalised min-max set `D_Ψ = {x : x₁ = 1, e_S(x) ≤ μ̂(Ψ)}` yields
//! points that are Pareto optimal over all positive vectors and min-max
//! optimal at the same time.
//!
//! The search runs Nelder–Mead from several points of `D_Ψ` (the normalised
//! columns of `(S/μ(S))*` and the principal subeigenvector), with a linear
//! penalty on `e_S(x) − μ̂`. An infeasible end point is pulled back towards
//! its start along the log-space segment, which stays inside `D_Ψ` because
//! that set is a polyhedron in log coordinates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::simplex::NelderMead;
use super::{aggregate, rank_alternatives, AhpError, Ranking};
use crate::tolerance::Tolerances;
use crate::tropical::{
    principal_subeigenvector, spectral_profile, MaxMatrix, PositiveVector, TropicalError,
};

/// Relative margin a sample must beat an objective by to count as a strict
/// improvement.
pub const DOMINATION_MARGIN: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParetoOptions {
    /// Number of starting points. `None` uses every star column plus the
    /// principal subeigenvector; larger counts add seeded random
    /// max-combinations of the star columns.
    pub starts: Option<usize>,
    pub seed: u64,
    /// Penalty weight is `penalty_factor · μ̂(Ψ)`.
    pub penalty_factor: f64,
    pub restarts: usize,
    pub max_evals: usize,
    /// Rounds of "replace by a dominating sample and re-optimise".
    pub polish_rounds: usize,
    /// Points closer than this in log-space ∞-norm are merged.
    pub proximity: f64,
    pub certificate: Sampler,
}

impl Default for ParetoOptions {
    fn default() -> Self {
        Self {
            starts: None,
            seed: 0x5eed,
            penalty_factor: 10.0,
            restarts: 4,
            max_evals: 20_000,
            polish_rounds: 3,
            proximity: 1e-6,
            certificate: Sampler::default(),
        }
    }
}

/// Sample set for the domination search, in log coordinates around the
/// candidate point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Sampler {
    /// Regular grid with `points_per_axis` offsets in `[-half_width,
    /// half_width]` per coordinate. The first coordinate is held fixed
    /// unless `include_scale` is set (objectives are scale invariant, so it
    /// only repeats points).
    Grid {
        points_per_axis: usize,
        half_width: f64,
        include_scale: bool,
    },
    /// `cloud` local samples spread over radii `radius`, `radius/10`,
    /// `radius/100` and `radius/1000`, plus `global` samples within
    /// `global_radius`.
    Random {
        cloud: usize,
        radius: f64,
        global: usize,
        global_radius: f64,
        seed: u64,
    },
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler::Random {
            cloud: 4000,
            radius: 0.5,
            global: 1000,
            global_radius: 2.5,
            seed: 0xc0ffee,
        }
    }
}

/// Largest sample count a grid may request.
pub const MAX_GRID_SAMPLES: usize = 20_000_000;

impl Sampler {
    fn for_each_offset(
        &self,
        n: usize,
        mut visit: impl FnMut(&[f64]) -> bool,
    ) -> Result<usize, AhpError> {
        let mut offset = vec![0.0; n];
        let mut count = 0usize;
        match *self {
            Sampler::Grid {
                points_per_axis,
                half_width,
                include_scale,
            } => {
                let free: Vec<usize> = if include_scale {
                    (0..n).collect()
                } else {
                    (1..n).collect()
                };
                let k = points_per_axis.max(1);
                let total = k
                    .checked_pow(free.len() as u32)
                    .filter(|&t| t <= MAX_GRID_SAMPLES)
                    .ok_or(AhpError::EnumerationTooLarge {
                        count: usize::MAX,
                        limit: MAX_GRID_SAMPLES,
                    })?;
                let step = if k == 1 {
                    0.0
                } else {
                    2.0 * half_width / (k - 1) as f64
                };
                let mut digits = vec![0usize; free.len()];
                for _ in 0..total {
                    for (d, &c) in digits.iter().zip(&free) {
                        offset[c] = -half_width + step * *d as f64;
                    }
                    count += 1;
                    if !visit(&offset) {
                        return Ok(count);
                    }
                    for d in digits.iter_mut() {
                        *d += 1;
                        if *d < k {
                            break;
                        }
                        *d = 0;
                    }
                }
            }
            Sampler::Random {
                cloud,
                radius,
                global,
                global_radius,
                seed,
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for s in 0..cloud + global {
                    let r = if s < cloud {
                        radius / 10f64.powi((s % 4) as i32)
                    } else {
                        global_radius
                    };
                    offset[0] = 0.0;
                    for o in offset.iter_mut().skip(1) {
                        *o = rng.gen_range(-r..=r);
                    }
                    count += 1;
                    if !visit(&offset) {
                        return Ok(count);
                    }
                }
            }
        }
        Ok(count)
    }
}

/// Which optimality notion a domination search tries to refute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Optimality {
    /// Refuted by a point improving every objective strictly.
    WeakPareto,
    /// Refuted by a point no worse anywhere and strictly better somewhere.
    Pareto,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    NotRefuted {
        samples: usize,
    },
    CounterExample {
        point: PositiveVector,
        values: Vec<f64>,
    },
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::CounterExample { .. })
    }
}

/// Domination summary attached to every Pareto result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub samples: usize,
    pub weakly_dominated: bool,
    pub dominated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParetoResult {
    /// Point of `D_Ψ`, first entry one.
    pub point: PositiveVector,
    /// `e_{A_i}(point)` per criterion.
    pub objective_values: Vec<f64>,
    pub weighted_value: f64,
    pub max_error: f64,
    pub ranking: Ranking,
    pub start_index: usize,
    pub certificate: Certificate,
}

/// Objectives `e_{A_i}` evaluated on log coordinates.
struct Objectives {
    n: usize,
    logs: Vec<Vec<f64>>,
    aggregate: Vec<f64>,
}

impl Objectives {
    fn new<M: AsRef<MaxMatrix>>(ps: &[M], s: &MaxMatrix) -> Self {
        Self {
            n: s.dim(),
            logs: ps.iter().map(|a| a.as_ref().log_entries()).collect(),
            aggregate: s.log_entries(),
        }
    }

    fn log_error(&self, logs: &[f64], y: &[f64]) -> f64 {
        let n = self.n;
        let mut best = f64::NEG_INFINITY;
        for k in 0..n {
            let row = &logs[k * n..(k + 1) * n];
            for l in 0..n {
                let v = row[l] + y[l] - y[k];
                if v > best {
                    best = v;
                }
            }
        }
        best
    }

    fn values(&self, y: &[f64]) -> Vec<f64> {
        self.logs
            .iter()
            .map(|l| self.log_error(l, y).exp())
            .collect()
    }

    fn aggregate_error(&self, y: &[f64]) -> f64 {
        self.log_error(&self.aggregate, y).exp()
    }
}

fn full_coords(free: &[f64]) -> Vec<f64> {
    let mut y = Vec::with_capacity(free.len() + 1);
    y.push(0.0);
    y.extend_from_slice(free);
    y
}

fn log_point(x: &PositiveVector) -> Vec<f64> {
    let x0 = x[0].ln();
    x.as_slice().iter().map(|v| v.ln() - x0).collect()
}

fn point_from_log(y: &[f64]) -> Result<PositiveVector, AhpError> {
    let mut v: Vec<f64> = y.iter().map(|t| (t - y[0]).exp()).collect();
    v[0] = 1.0;
    Ok(PositiveVector::new(v)?)
}

fn check_alpha(alpha: &[f64], m: usize) -> Result<(), AhpError> {
    if alpha.len() != m || !alpha.iter().all(|a| a.is_finite() && *a > 0.0) {
        return Err(AhpError::InfeasibleAlpha {
            expected: m,
            got: alpha.to_vec(),
        });
    }
    Ok(())
}

/// Pareto optimal points of `e_{A_1}, …, e_{A_m}` minimising
/// `Σ α_i e_{A_i}` over `D_Ψ`, one per distinct point and ranking found.
pub fn pareto_point<M: AsRef<MaxMatrix>>(
    ps: &[M],
    alpha: &[f64],
    opts: &ParetoOptions,
    tol: &Tolerances,
) -> Result<Vec<ParetoResult>, AhpError> {
    check_alpha(alpha, ps.len())?;
    let s = aggregate(ps, false)?;
    if s.is_zero() {
        return Err(AhpError::AllZero);
    }
    let n = s.dim();
    let profile = spectral_profile(&s, tol.algebraic)?;
    let mu_hat = profile.mu;
    let obj = Objectives::new(ps, &s);
    let weighted = |y: &[f64]| -> f64 { obj.values(y).iter().zip(alpha).map(|(e, a)| a * e).sum() };
    let feasible = |y: &[f64]| obj.aggregate_error(y) <= mu_hat * (1.0 + tol.algebraic);

    let psv = principal_subeigenvector(&s)?;
    if n == 1 || profile.unique_direction {
        let res = finish(ps, &obj, psv, alpha, 0, opts, tol)?;
        return Ok(vec![res]);
    }

    let starts = starting_points(&profile.basis, &profile.star, &psv, opts)?;
    let penalty = opts.penalty_factor * mu_hat;
    let penalised = |free: &[f64]| -> f64 {
        let y = full_coords(free);
        let violation = (obj.aggregate_error(&y) - mu_hat).max(0.0);
        weighted(&y) + penalty * violation
    };
    let nm = NelderMead {
        max_evals: opts.max_evals,
        initial_step: 0.05,
        ..NelderMead::default()
    };

    let mut results: Vec<ParetoResult> = Vec::new();
    for (start_index, start) in starts.iter().enumerate() {
        let mut anchor = log_point(start);
        let mut y = descend(&nm, &penalised, &anchor, opts.restarts);
        y = pull_back(&anchor, &y, &feasible);
        for _ in 0..opts.polish_rounds {
            let x = point_from_log(&y)?;
            match pareto_oracle(ps, &x, &opts.certificate, Optimality::Pareto)? {
                Verdict::NotRefuted { .. } => break,
                Verdict::CounterExample { point, .. } => {
                    anchor = log_point(&point);
                    y = descend(&nm, &penalised, &anchor, opts.restarts);
                    y = pull_back(&anchor, &y, &feasible);
                }
            }
        }
        if !y.iter().all(|v| v.is_finite()) {
            continue;
        }
        let candidate = finish(ps, &obj, point_from_log(&y)?, alpha, start_index, opts, tol)?;
        merge(&mut results, candidate, opts.proximity);
    }
    if results.is_empty() {
        return Err(AhpError::SolverFailure);
    }
    Ok(results)
}

fn starting_points(
    _basis: &[Vec<f64>],
    star: &MaxMatrix,
    psv: &PositiveVector,
    opts: &ParetoOptions,
) -> Result<Vec<PositiveVector>, AhpError> {
    let n = star.dim();
    let mut starts: Vec<PositiveVector> = (0..n)
        .map(|j| {
            let col = star.column(j);
            PositiveVector::new(col.iter().map(|v| v / col[0]).collect())
        })
        .collect::<Result<_, TropicalError>>()?;
    starts.push(psv.clone());
    let wanted = opts.starts.unwrap_or(starts.len()).max(1);
    if wanted <= starts.len() {
        starts.truncate(wanted);
        return Ok(starts);
    }
    // random max-combinations of star columns stay in the subeigencone
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    while starts.len() < wanted {
        let lambdas: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0f64..=0.0).exp()).collect();
        let x: Vec<f64> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| lambdas[j] * star.get(i, j) / star.get(0, j))
                    .fold(0.0, f64::max)
            })
            .collect();
        let x = PositiveVector::new(x)?;
        starts.push(x.normalized_first());
    }
    Ok(starts)
}

fn descend(
    nm: &NelderMead,
    f: &impl Fn(&[f64]) -> f64,
    anchor: &[f64],
    restarts: usize,
) -> Vec<f64> {
    let mut free = anchor[1..].to_vec();
    let mut best = f(&free);
    for _ in 0..=restarts {
        let m = nm.minimize(f, &free);
        let improved = m.value < best - 1e-15 * best.abs();
        if m.value <= best {
            best = m.value;
            free = m.x;
        }
        if !improved {
            break;
        }
    }
    full_coords(&free)
}

/// Largest step from the feasible `anchor` towards `target` that stays
/// feasible.
fn pull_back(anchor: &[f64], target: &[f64], feasible: &impl Fn(&[f64]) -> bool) -> Vec<f64> {
    if feasible(target) {
        return target.to_vec();
    }
    let at = |t: f64| -> Vec<f64> {
        anchor
            .iter()
            .zip(target)
            .map(|(a, b)| a + t * (b - a))
            .collect()
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if feasible(&at(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(lo)
}

fn finish<M: AsRef<MaxMatrix>>(
    ps: &[M],
    obj: &Objectives,
    point: PositiveVector,
    alpha: &[f64],
    start_index: usize,
    opts: &ParetoOptions,
    tol: &Tolerances,
) -> Result<ParetoResult, AhpError> {
    let objective_values = obj.values(&log_point(&point));
    let weighted_value = objective_values.iter().zip(alpha).map(|(e, a)| a * e).sum();
    let max_error = objective_values.iter().copied().fold(0.0, f64::max);
    let scan = scan_domination(ps, &point, &opts.certificate, None)?;
    Ok(ParetoResult {
        ranking: rank_alternatives(&point, tol.tie),
        point,
        objective_values,
        weighted_value,
        max_error,
        start_index,
        certificate: Certificate {
            samples: scan.samples,
            weakly_dominated: scan.weak.is_some(),
            dominated: scan.strict.is_some(),
        },
    })
}

fn merge(results: &mut Vec<ParetoResult>, candidate: ParetoResult, proximity: f64) {
    let cy = log_point(&candidate.point);
    let duplicate = results.iter_mut().find(|r| {
        r.ranking == candidate.ranking
            || log_point(&r.point)
                .iter()
                .zip(&cy)
                .all(|(a, b)| (a - b).abs() <= proximity)
    });
    match duplicate {
        Some(existing) if candidate.weighted_value < existing.weighted_value => {
            let start_index = existing.start_index.min(candidate.start_index);
            *existing = ParetoResult {
                start_index,
                ..candidate
            };
        }
        Some(_) => {}
        None => results.push(candidate),
    }
}

struct Scan {
    samples: usize,
    weak: Option<(PositiveVector, Vec<f64>)>,
    strict: Option<(PositiveVector, Vec<f64>)>,
}

fn scan_domination<M: AsRef<MaxMatrix>>(
    ps: &[M],
    w: &PositiveVector,
    sampler: &Sampler,
    stop_at: Option<Optimality>,
) -> Result<Scan, AhpError> {
    let n = w.len();
    for a in ps {
        if a.as_ref().dim() != n {
            return Err(TropicalError::DimensionMismatch {
                left: a.as_ref().dim(),
                right: n,
            }
            .into());
        }
    }
    let s = aggregate(ps, false)?;
    let obj = Objectives::new(ps, &s);
    let base = log_point(w);
    let reference = obj.values(&base);
    let mut y = vec![0.0; n];
    let mut weak = None;
    let mut strict = None;
    let mut failure = None;
    let samples = sampler.for_each_offset(n, |offset| {
        for ((yi, b), o) in y.iter_mut().zip(&base).zip(offset) {
            *yi = b + o;
        }
        let vals = obj.values(&y);
        let no_worse = vals.iter().zip(&reference).all(|(v, r)| v <= r);
        if !no_worse {
            return true;
        }
        let better = |(v, r): (&f64, &f64)| *v < r * (1.0 - DOMINATION_MARGIN);
        let all_better = vals.iter().zip(&reference).all(better);
        let some_better = vals.iter().zip(&reference).any(better);
        if (all_better && weak.is_none()) || (some_better && strict.is_none()) {
            match point_from_log(&y) {
                Ok(p) => {
                    if all_better && weak.is_none() {
                        weak = Some((p.clone(), vals.clone()));
                    }
                    if some_better && strict.is_none() {
                        strict = Some((p, vals));
                    }
                }
                Err(e) => {
                    failure = Some(e);
                    return false;
                }
            }
        }
        match stop_at {
            Some(Optimality::WeakPareto) => weak.is_none(),
            Some(Optimality::Pareto) => strict.is_none(),
            None => true,
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Scan {
        samples,
        weak,
        strict,
    })
}

/// Searches the sample set around `w` for a point that refutes `notion`.
pub fn pareto_oracle<M: AsRef<MaxMatrix>>(
    ps: &[M],
    w: &PositiveVector,
    sampler: &Sampler,
    notion: Optimality,
) -> Result<Verdict, AhpError> {
    let scan = scan_domination(ps, w, sampler, Some(notion))?;
    let found = match notion {
        Optimality::WeakPareto => scan.weak,
        Optimality::Pareto => scan.strict,
    };
    Ok(match found {
        Some((point, values)) => Verdict::CounterExample { point, values },
        None => Verdict::NotRefuted {
            samples: scan.samples,
        },
    })
}
