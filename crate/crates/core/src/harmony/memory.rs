use rand::Rng;

use super::{Evaluator, HarmonyError, HsParams, Member, ProblemSpec, MAX_REDRAWS};

/// The harmony memory: `hms` evaluated members.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonyMemory<D> {
    pub members: Vec<Member<D>>,
}

impl<D> HarmonyMemory<D> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn uniform<R: Rng + ?Sized>(spec: &ProblemSpec, j: usize, rng: &mut R) -> f64 {
    let v = spec.lower[j] + rng.random::<f64>() * spec.range(j);
    v.min(spec.upper[j])
}

/// Fills the memory with uniform random, evaluable, mutually distinct members.
///
/// `next_id` is the running evaluation counter; it is advanced for every
/// member stored.
pub fn initialize_memory<E, R>(
    spec: &ProblemSpec,
    params: &HsParams,
    evaluator: &E,
    rng: &mut R,
    next_id: &mut u64,
) -> Result<HarmonyMemory<E::Detail>, HarmonyError>
where
    E: Evaluator + ?Sized,
    R: Rng + ?Sized,
{
    let mut memory = HarmonyMemory { members: Vec::with_capacity(params.hms) };
    for slot in 0..params.hms {
        let mut stored = false;
        for _ in 0..MAX_REDRAWS {
            let x: Vec<f64> = (0..spec.dimension()).map(|j| uniform(spec, j, rng)).collect();
            if !memory.is_empty() && min_member_distance(&x, &memory, spec) < params.diversity_delta {
                continue;
            }
            let Ok(eval) = evaluator.evaluate(&x) else {
                continue;
            };
            memory.members.push(Member::from_evaluation(*next_id, x, eval));
            *next_id += 1;
            stored = true;
            break;
        }
        if !stored {
            return Err(HarmonyError::InitializationExhausted { slot, attempts: MAX_REDRAWS });
        }
    }
    Ok(memory)
}

/// Draws a new candidate from the memory.
///
/// Per dimension: with probability `hmcr` the value is copied from a random
/// member and, with probability `par`, shifted by ±u·bw (u ∈ [0, 1), clamped
/// to the bounds); otherwise it is drawn uniformly within the bounds.
pub fn improvise_candidate<D, R: Rng + ?Sized>(
    hm: &HarmonyMemory<D>,
    spec: &ProblemSpec,
    params: &HsParams,
    rng: &mut R,
) -> Vec<f64> {
    (0..spec.dimension())
        .map(|j| {
            if rng.random::<f64>() < params.hmcr {
                let pick = rng.random_range(0..hm.len());
                let mut v = hm.members[pick].x[j];
                if rng.random::<f64>() < params.par {
                    let step = rng.random::<f64>() * params.bandwidth_fraction * spec.range(j);
                    v = if rng.random::<bool>() { v + step } else { v - step };
                    v = v.clamp(spec.lower[j], spec.upper[j]);
                }
                v
            } else {
                uniform(spec, j, rng)
            }
        })
        .collect()
}

/// Smallest bound-normalized Euclidean distance from `candidate` to any member.
pub fn min_member_distance<D>(candidate: &[f64], hm: &HarmonyMemory<D>, spec: &ProblemSpec) -> f64 {
    hm.members
        .iter()
        .map(|m| {
            candidate
                .iter()
                .zip(&m.x)
                .enumerate()
                .map(|(j, (c, x))| {
                    let t = (c - x) / spec.range(j);
                    t * t
                })
                .sum::<f64>()
                .sqrt()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Arithmetic mean of one objective over the memory.
pub fn mean_objective<D>(hm: &HarmonyMemory<D>, objective_index: usize) -> f64 {
    let sum: f64 = hm.members.iter().map(|m| m.f[objective_index]).sum();
    sum / hm.len() as f64
}
