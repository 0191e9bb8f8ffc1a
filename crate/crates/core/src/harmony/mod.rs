//! Modified harmony search for constrained multi-objective problems.
//!
//! The memory keeps infeasible members instead of discarding them. Feasible
//! members are ordered by Pareto front on the objectives, infeasible ones by
//! how many other members dominate them in constraint space. A new candidate
//! replaces the worst member only when it is feasible against an infeasible
//! worst, better in objectives between two feasible members, or
//! constraint-dominates an infeasible worst.

mod archive;
mod engine;
mod memory;
mod params;
mod penalty;
mod ranking;

pub use archive::{crowding_distances, ParetoArchive};
pub use engine::{run_optimization, run_optimization_with, EvaluationRecord, IterationTrace, OptimizationRun};
pub use memory::{improvise_candidate, initialize_memory, mean_objective, min_member_distance, HarmonyMemory};
pub use params::HsParams;
pub use penalty::{penalty_scalarization, run_penalty_baseline, BaselineRun};
pub use ranking::{
    constraint_dominates, non_dominated_fronts, normalized_sum, objective_dominates, rank_memory,
    replace_worst, Rejection, Replacement,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarmonyError {
    #[error("invalid problem: {0}")]
    InvalidSpec(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("could not fill memory slot {slot} within {attempts} draws")]
    InitializationExhausted { slot: usize, attempts: usize },
    #[error("no evaluable candidate within {attempts} draws (iteration {iteration}, batch index {batch_index})")]
    ResampleExhausted { iteration: usize, batch_index: usize, attempts: usize },
    #[error("vector lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("archive accepts feasible members only")]
    InfeasibleMember,
}

/// Redraw cap for initialization slots and for failed candidate evaluations.
pub const MAX_REDRAWS: usize = 100;

/// An evaluation that could not produce objective and constraint values.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("evaluation failed: {reason}")]
pub struct GeometricFailure {
    pub reason: String,
}

impl GeometricFailure {
    pub fn new(reason: impl Into<String>) -> Self {
        Self { reason: reason.into() }
    }
}

/// Objective vector `f`, constraint vector `g` (feasible iff all `g_i ≤ 0`),
/// and whatever extra output the evaluator wants to carry along.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation<D> {
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub detail: D,
}

/// A pure mapping from genome to evaluation.
pub trait Evaluator {
    type Detail: Clone;

    fn evaluate(&self, x: &[f64]) -> Result<Evaluation<Self::Detail>, GeometricFailure>;
}

impl<F> Evaluator for F
where
    F: Fn(&[f64]) -> Result<Evaluation<()>, GeometricFailure>,
{
    type Detail = ();

    fn evaluate(&self, x: &[f64]) -> Result<Evaluation<()>, GeometricFailure> {
        self(x)
    }
}

/// Box bounds and output sizes of a problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub objective_count: usize,
    pub constraint_count: usize,
    /// Tolerance for equality constraints rewritten as |h| ≤ ε. Carried for
    /// completeness; the engine only sees inequality constraints.
    pub equality_tolerance: f64,
    /// Per-objective divisors for the equal-weight normalized sum.
    pub objective_scales: Vec<f64>,
}

impl ProblemSpec {
    pub fn new(
        lower: Vec<f64>,
        upper: Vec<f64>,
        objective_count: usize,
        constraint_count: usize,
    ) -> Result<Self, HarmonyError> {
        let spec = Self {
            lower,
            upper,
            objective_count,
            constraint_count,
            equality_tolerance: 0.0,
            objective_scales: vec![1.0; objective_count],
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_objective_scales(mut self, scales: Vec<f64>) -> Result<Self, HarmonyError> {
        self.objective_scales = scales;
        self.validate()?;
        Ok(self)
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn range(&self, j: usize) -> f64 {
        self.upper[j] - self.lower[j]
    }

    pub fn validate(&self) -> Result<(), HarmonyError> {
        let invalid = |m: &str| Err(HarmonyError::InvalidSpec(m.to_string()));
        if self.lower.is_empty() {
            return invalid("dimension must be positive");
        }
        if self.lower.len() != self.upper.len() {
            return Err(HarmonyError::LengthMismatch { left: self.lower.len(), right: self.upper.len() });
        }
        if self
            .lower
            .iter()
            .zip(&self.upper)
            .any(|(lo, hi)| !(lo.is_finite() && hi.is_finite() && lo < hi))
        {
            return invalid("lower bounds must be below upper bounds");
        }
        if self.objective_count == 0 {
            return invalid("at least one objective is required");
        }
        if self.objective_scales.len() != self.objective_count
            || self.objective_scales.iter().any(|s| !(*s > 0.0 && s.is_finite()))
        {
            return invalid("one positive scale per objective is required");
        }
        if !(self.equality_tolerance >= 0.0) {
            return invalid("equality tolerance must be non-negative");
        }
        Ok(())
    }

    /// Length of the bound-normalized diagonal, √dimension.
    pub fn normalized_diagonal(&self) -> f64 {
        (self.dimension() as f64).sqrt()
    }
}

/// An evaluated memory member.
#[derive(Debug, Clone, PartialEq)]
pub struct Member<D> {
    /// Sequence number of the evaluation that produced this member.
    pub id: u64,
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub feasible: bool,
    pub detail: D,
}

impl<D> Member<D> {
    pub fn from_evaluation(id: u64, x: Vec<f64>, eval: Evaluation<D>) -> Self {
        let feasible = eval.g.iter().all(|g| *g <= 0.0);
        Self { id, x, f: eval.f, g: eval.g, feasible, detail: eval.detail }
    }

    /// Σ max(0, g_i).
    pub fn total_violation(&self) -> f64 {
        self.g.iter().map(|g| g.max(0.0)).sum()
    }
}
