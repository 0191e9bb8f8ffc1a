use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::memory::{improvise_candidate, initialize_memory, mean_objective};
use super::ranking::{normalized_sum, rank_memory, replace_worst};
use super::{Evaluator, HarmonyError, HarmonyMemory, HsParams, Member, ParetoArchive, ProblemSpec, MAX_REDRAWS};

/// One successfully evaluated candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationRecord<D> {
    pub id: u64,
    /// Zero-based iteration.
    pub iteration: usize,
    pub batch_index: usize,
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub feasible: bool,
    pub replaced: bool,
    pub detail: D,
}

/// State summary after one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub iteration: usize,
    /// Genome of the best-ranked memory member.
    pub best_x: Vec<f64>,
    /// Per-objective minimum over feasible memory members and the archive.
    pub best_f: Option<Vec<f64>>,
    /// Per-objective mean over the whole memory.
    pub mean_f: Vec<f64>,
    pub feasible_in_memory: usize,
    pub replacements: usize,
    pub archive_size: usize,
    pub archive_ids: Vec<u64>,
}

/// Everything a run produced.
#[derive(Debug, Clone)]
pub struct OptimizationRun<D> {
    pub params: HsParams,
    pub traces: Vec<IterationTrace>,
    pub archive: ParetoArchive<D>,
    /// Archive member with the smallest normalized objective sum.
    pub selected: Option<Member<D>>,
    pub evaluations: Vec<EvaluationRecord<D>>,
    pub memory: HarmonyMemory<D>,
}

pub fn run_optimization<E: Evaluator>(
    spec: &ProblemSpec,
    evaluator: &E,
    params: &HsParams,
) -> Result<OptimizationRun<E::Detail>, HarmonyError> {
    run_optimization_with(spec, evaluator, params, |_| {})
}

/// Runs the modified harmony search, calling `on_iteration` after every iteration.
///
/// Each iteration improvises `batch_size` candidates from the memory as it
/// stood at the start of the iteration, re-improvising candidates whose
/// evaluation fails (at most [`MAX_REDRAWS`] times). Candidates are then
/// applied to the memory and offered to the archive in batch order.
pub fn run_optimization_with<E, F>(
    spec: &ProblemSpec,
    evaluator: &E,
    params: &HsParams,
    mut on_iteration: F,
) -> Result<OptimizationRun<E::Detail>, HarmonyError>
where
    E: Evaluator,
    F: FnMut(&IterationTrace),
{
    spec.validate()?;
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut next_id = 0u64;
    let mut memory = initialize_memory(spec, params, evaluator, &mut rng, &mut next_id)?;
    let mut archive = ParetoArchive::new(params.archive_capacity);
    for m in memory.members.iter().filter(|m| m.feasible) {
        archive.update(m.clone())?;
    }

    let mut traces = Vec::with_capacity(params.iterations);
    let mut evaluations = Vec::with_capacity(params.iterations * params.batch_size);
    for iteration in 0..params.iterations {
        let mut batch = Vec::with_capacity(params.batch_size);
        for batch_index in 0..params.batch_size {
            let mut found = None;
            for _ in 0..MAX_REDRAWS {
                let x = improvise_candidate(&memory, spec, params, &mut rng);
                if let Ok(eval) = evaluator.evaluate(&x) {
                    found = Some(Member::from_evaluation(next_id, x, eval));
                    next_id += 1;
                    break;
                }
            }
            let member = found.ok_or(HarmonyError::ResampleExhausted {
                iteration,
                batch_index,
                attempts: MAX_REDRAWS,
            })?;
            batch.push(member);
        }

        let mut replacements = 0;
        for (batch_index, candidate) in batch.into_iter().enumerate() {
            if candidate.feasible {
                archive.update(candidate.clone())?;
            }
            let record = EvaluationRecord {
                id: candidate.id,
                iteration,
                batch_index,
                x: candidate.x.clone(),
                f: candidate.f.clone(),
                g: candidate.g.clone(),
                feasible: candidate.feasible,
                replaced: false,
                detail: candidate.detail.clone(),
            };
            let outcome = replace_worst(&mut memory, candidate, spec, params)?;
            replacements += usize::from(outcome.replaced());
            evaluations.push(EvaluationRecord { replaced: outcome.replaced(), ..record });
        }

        let trace = iteration_trace(iteration, &memory, &archive, spec, replacements);
        on_iteration(&trace);
        traces.push(trace);
    }

    let selected = archive
        .members()
        .iter()
        .min_by(|a, b| {
            normalized_sum(&a.f, &spec.objective_scales).total_cmp(&normalized_sum(&b.f, &spec.objective_scales))
        })
        .cloned();
    Ok(OptimizationRun { params: params.clone(), traces, archive, selected, evaluations, memory })
}

fn iteration_trace<D>(
    iteration: usize,
    memory: &HarmonyMemory<D>,
    archive: &ParetoArchive<D>,
    spec: &ProblemSpec,
    replacements: usize,
) -> IterationTrace {
    let order = rank_memory(memory, spec);
    let best_x = memory.members[order[0]].x.clone();
    let mut best_f: Option<Vec<f64>> = None;
    let feasible = memory.members.iter().filter(|m| m.feasible);
    for f in feasible.clone().chain(archive.members()).map(|m| &m.f) {
        match &mut best_f {
            None => best_f = Some(f.clone()),
            Some(best) => best.iter_mut().zip(f).for_each(|(b, v)| *b = b.min(*v)),
        }
    }
    IterationTrace {
        iteration,
        best_x,
        best_f,
        mean_f: (0..spec.objective_count).map(|k| mean_objective(memory, k)).collect(),
        feasible_in_memory: feasible.count(),
        replacements,
        archive_size: archive.len(),
        archive_ids: archive.members().iter().map(|m| m.id).collect(),
    }
}
