//! Comparison matrices and the AHP solvers built on the tropical layer.

mod classical;
mod multi;
mod pareto;
mod problem;
mod ranking;
pub mod simplex;
mod sr;

pub use classical::{classical_ahp, perron_vector, ClassicalResult, CriterionVector};
pub use multi::{
    aggregate, brute_force_gsr, commutes, gen_spectral_radius, global_optimum, membership_c_psi,
    membership_via_aggregate, minmax_solution, normalized_radius, visualization_check, MultiResult,
    ScalingCheck, VisualizationReport, GSR_ENUMERATION_LIMIT,
};
pub use pareto::{
    pareto_oracle, pareto_point, Certificate, Optimality, ParetoOptions, ParetoResult, Sampler,
    Verdict, DOMINATION_MARGIN, MAX_GRID_SAMPLES,
};
pub use problem::{Criteria, Problem};
pub use ranking::{rank_alternatives, Ranking};
pub use sr::{
    relative_error, sr_spectral_radius, transitive_from_weights, validate_sr, SrError, SrMatrix,
};

use thiserror::Error;

use crate::tropical::TropicalError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AhpError {
    #[error(transparent)]
    Tropical(#[from] TropicalError),
    #[error(transparent)]
    Sr(#[from] SrError),
    #[error("power iteration did not converge within {0} steps")]
    NoConvergence(usize),
    #[error("problem has no criteria matrix or weights")]
    MissingCriteria,
    #[error("at least one comparison matrix is required")]
    NoMatrices,
    #[error("all matrices are zero")]
    AllZero,
    #[error("alpha must hold {expected} finite positive weights, got {got:?}")]
    InfeasibleAlpha { expected: usize, got: Vec<f64> },
    #[error("no start point produced a finite solution")]
    SolverFailure,
    #[error("enumeration needs {count} items, limit is {limit}")]
    EnumerationTooLarge { count: usize, limit: usize },
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
}
