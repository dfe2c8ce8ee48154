use serde::{Deserialize, Serialize};

/// Numerical tolerances shared by the engine.
///
/// All values are relative. `algebraic` governs equalities that hold exactly
/// in exact arithmetic (criticality, star idempotence, reciprocity);
/// `normalized_radius` decides whether `μ(Ŝ) = 1`, which stacks one
/// normalisation per criterion and therefore gets a looser default.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub algebraic: f64,
    pub reciprocity: f64,
    pub normalized_radius: f64,
    pub tie: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            algebraic: 1e-9,
            reciprocity: 1e-9,
            normalized_radius: 1e-6,
            tie: 1e-3,
        }
    }
}

impl Tolerances {
    /// True if every field is finite and nonnegative.
    pub fn is_valid(&self) -> bool {
        [
            self.algebraic,
            self.reciprocity,
            self.normalized_radius,
            self.tie,
        ]
        .iter()
        .all(|t| t.is_finite() && *t >= 0.0)
    }
}
