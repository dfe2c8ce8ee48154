//! Max-algebra engine for the multi-criteria Analytic Hierarchy Process.
//!
//! The crate is split in two layers:
//!
//! - [`tropical`]: max-times semiring linear algebra on nonnegative square
//!   matrices (products, maximal cycle geometric means, Kleene stars,
//!   critical graphs, eigen- and subeigenvectors).
//! - [`ahp`]: symmetrically reciprocal comparison matrices, the relative
//!   error objective, the classical Perron pipeline and the three
//!   multi-objective solvers (globally optimal, min-max optimal and Pareto
//!   optimal weight vectors).
//!
//! In the max algebra `a ⊕ b = max(a, b)` and `a ⊗ b = a·b`. Everything that
//! walks long paths (cycle means, closures) runs on logarithms of the entries
//! so that `0 ↦ −∞` and products never overflow.

pub mod ahp;
mod tolerance;
pub mod tropical;

pub use ahp::{
    AhpError, ClassicalResult, Criteria, MultiResult, ParetoOptions, ParetoResult, Problem,
    Ranking, SrError, SrMatrix,
};
pub use tolerance::Tolerances;
pub use tropical::{CriticalGraph, MaxMatrix, PositiveVector, SpectralProfile, TropicalError};
