//! Classic penalty-function harmony search, kept as a comparison baseline.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::memory::{improvise_candidate, initialize_memory};
use super::{Evaluator, HarmonyError, HsParams, ProblemSpec, MAX_REDRAWS};

/// Weight applied to every constraint when `penalty_weights` is not set.
pub const DEFAULT_PENALTY_WEIGHT: f64 = 1e3;

/// `f + Σ w_i · max(0, g_i)²`.
pub fn penalty_scalarization(f: f64, g: &[f64], w: &[f64]) -> Result<f64, HarmonyError> {
    if g.len() != w.len() {
        return Err(HarmonyError::LengthMismatch { left: g.len(), right: w.len() });
    }
    Ok(f + g.iter().zip(w).map(|(gi, wi)| wi * gi.max(0.0).powi(2)).sum::<f64>())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineRun {
    pub best_x: Vec<f64>,
    /// Penalized value of `best_x`.
    pub best_value: f64,
    pub best_feasible: bool,
    /// Best penalized value after each iteration.
    pub history: Vec<f64>,
}

/// Single-objective harmony search on the penalized objective
/// `objective_index`: the worst member is replaced whenever a candidate has
/// a smaller penalized value.
pub fn run_penalty_baseline<E: Evaluator>(
    spec: &ProblemSpec,
    evaluator: &E,
    params: &HsParams,
    objective_index: usize,
) -> Result<BaselineRun, HarmonyError> {
    spec.validate()?;
    params.validate()?;
    if objective_index >= spec.objective_count {
        return Err(HarmonyError::InvalidParams("objective index out of range".into()));
    }
    let weights = params
        .penalty_weights
        .clone()
        .unwrap_or_else(|| vec![DEFAULT_PENALTY_WEIGHT; spec.constraint_count]);
    let score = |f: &[f64], g: &[f64]| penalty_scalarization(f[objective_index], g, &weights);

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut memory = initialize_memory(spec, params, evaluator, &mut rng, &mut 0)?;
    let mut scores = memory
        .members
        .iter()
        .map(|m| score(&m.f, &m.g))
        .collect::<Result<Vec<_>, _>>()?;

    let mut history = Vec::with_capacity(params.iterations);
    for iteration in 0..params.iterations {
        for batch_index in 0..params.batch_size {
            let mut accepted = None;
            for _ in 0..MAX_REDRAWS {
                let x = improvise_candidate(&memory, spec, params, &mut rng);
                if let Ok(eval) = evaluator.evaluate(&x) {
                    accepted = Some((x, eval));
                    break;
                }
            }
            let (x, eval) = accepted.ok_or(HarmonyError::ResampleExhausted {
                iteration,
                batch_index,
                attempts: MAX_REDRAWS,
            })?;
            let value = score(&eval.f, &eval.g)?;
            let (worst, worst_value) = scores
                .iter()
                .copied()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("memory is non-empty");
            if value < worst_value {
                memory.members[worst] = super::Member::from_evaluation(0, x, eval);
                scores[worst] = value;
            }
        }
        history.push(scores.iter().copied().fold(f64::INFINITY, f64::min));
    }

    let (best, best_value) = scores
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("memory is non-empty");
    Ok(BaselineRun {
        best_x: memory.members[best].x.clone(),
        best_value,
        best_feasible: memory.members[best].feasible,
        history,
    })
}
