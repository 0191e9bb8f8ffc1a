//! Member ordering and the replacement rule.

use std::cmp::Ordering;

use super::memory::min_member_distance;
use super::{HarmonyError, HarmonyMemory, HsParams, Member, ProblemSpec};

/// Pareto dominance for minimization.
pub fn objective_dominates(fa: &[f64], fb: &[f64]) -> bool {
    let mut strict = false;
    for (a, b) in fa.iter().zip(fb) {
        if a > b {
            return false;
        }
        strict |= a < b;
    }
    strict
}

/// `ga` constraint-dominates `gb`: no value larger and at least one smaller.
pub fn constraint_dominates(ga: &[f64], gb: &[f64]) -> Result<bool, HarmonyError> {
    if ga.len() != gb.len() {
        return Err(HarmonyError::LengthMismatch { left: ga.len(), right: gb.len() });
    }
    Ok(objective_dominates(ga, gb))
}

/// Equal-weight sum of objectives divided by their scales.
pub fn normalized_sum(f: &[f64], scales: &[f64]) -> f64 {
    f.iter().zip(scales).map(|(v, s)| v / s).sum()
}

/// Front index (0 = non-dominated) of every objective vector.
pub fn non_dominated_fronts(objectives: &[&[f64]]) -> Vec<usize> {
    let n = objectives.len();
    let mut dominated_by = vec![0usize; n];
    let mut dominates: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && objective_dominates(objectives[i], objectives[j]) {
                dominates[i].push(j);
                dominated_by[j] += 1;
            }
        }
    }
    let mut front = vec![usize::MAX; n];
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_by[i] == 0).collect();
    let mut level = 0;
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            front[i] = level;
            for &j in &dominates[i] {
                dominated_by[j] -= 1;
                if dominated_by[j] == 0 {
                    next.push(j);
                }
            }
        }
        level += 1;
        current = next;
    }
    front
}

/// Memory indices from best to worst.
///
/// Feasible members come first, ordered by Pareto front and then by the
/// normalized objective sum. Infeasible members follow, ordered by how many
/// other infeasible members constraint-dominate them and then by total
/// violation. Remaining ties keep memory order.
pub fn rank_memory<D>(hm: &HarmonyMemory<D>, spec: &ProblemSpec) -> Vec<usize> {
    let (feasible, infeasible): (Vec<usize>, Vec<usize>) =
        (0..hm.len()).partition(|&i| hm.members[i].feasible);

    let f_refs: Vec<&[f64]> = feasible.iter().map(|&i| hm.members[i].f.as_slice()).collect();
    let fronts = non_dominated_fronts(&f_refs);
    let mut feasible_keyed: Vec<(usize, f64, usize)> = feasible
        .iter()
        .zip(&fronts)
        .map(|(&i, &front)| (front, normalized_sum(&hm.members[i].f, &spec.objective_scales), i))
        .collect();
    feasible_keyed.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut infeasible_keyed: Vec<(usize, f64, usize)> = infeasible
        .iter()
        .map(|&i| {
            let gi = &hm.members[i].g;
            let count = infeasible
                .iter()
                .filter(|&&j| j != i && objective_dominates(&hm.members[j].g, gi))
                .count();
            (count, hm.members[i].total_violation(), i)
        })
        .collect();
    infeasible_keyed.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2)));

    feasible_keyed.into_iter().chain(infeasible_keyed).map(|(_, _, i)| i).collect()
}

/// Why a candidate was not stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rejection {
    /// Closer than `diversity_delta` to an existing member.
    TooSimilar,
    /// Infeasible candidate against a feasible worst member.
    InfeasibleAgainstFeasible,
    /// Both feasible, candidate not better.
    NotBetter,
    /// Both infeasible, candidate does not constraint-dominate.
    NotDominating,
}

/// Outcome of [`replace_worst`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Replacement {
    /// Feasible candidate over an infeasible worst member.
    FeasibleOverInfeasible { index: usize },
    /// Both feasible and the candidate is better.
    BetterObjective { index: usize },
    /// Both infeasible and the candidate constraint-dominates.
    DominatesConstraints { index: usize },
    Rejected(Rejection),
}

impl Replacement {
    pub fn replaced(&self) -> bool {
        !matches!(self, Replacement::Rejected(_))
    }
}

fn feasible_better(cand: &[f64], worst: &[f64], scales: &[f64]) -> bool {
    if objective_dominates(cand, worst) {
        return true;
    }
    if objective_dominates(worst, cand) {
        return false;
    }
    normalized_sum(cand, scales).total_cmp(&normalized_sum(worst, scales)) == Ordering::Less
}

/// Compares `candidate` with the worst-ranked member and swaps it in if allowed.
pub fn replace_worst<D>(
    hm: &mut HarmonyMemory<D>,
    candidate: Member<D>,
    spec: &ProblemSpec,
    params: &HsParams,
) -> Result<Replacement, HarmonyError> {
    if hm.is_empty() {
        return Err(HarmonyError::InvalidParams("memory is empty".into()));
    }
    if candidate.f.len() != spec.objective_count {
        return Err(HarmonyError::LengthMismatch { left: candidate.f.len(), right: spec.objective_count });
    }
    if candidate.g.len() != spec.constraint_count {
        return Err(HarmonyError::LengthMismatch { left: candidate.g.len(), right: spec.constraint_count });
    }
    if min_member_distance(&candidate.x, hm, spec) < params.diversity_delta {
        return Ok(Replacement::Rejected(Rejection::TooSimilar));
    }
    let index = *rank_memory(hm, spec).last().expect("memory is non-empty");
    let worst = &hm.members[index];
    let outcome = match (candidate.feasible, worst.feasible) {
        (true, false) => Replacement::FeasibleOverInfeasible { index },
        (true, true) if feasible_better(&candidate.f, &worst.f, &spec.objective_scales) => {
            Replacement::BetterObjective { index }
        }
        (true, true) => Replacement::Rejected(Rejection::NotBetter),
        (false, false) if constraint_dominates(&candidate.g, &worst.g)? => {
            Replacement::DominatesConstraints { index }
        }
        (false, false) => Replacement::Rejected(Rejection::NotDominating),
        (false, true) => Replacement::Rejected(Rejection::InfeasibleAgainstFeasible),
    };
    if outcome.replaced() {
        hm.members[index] = candidate;
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(id: u64, f: &[f64], g: &[f64]) -> Member<()> {
        Member {
            id,
            x: vec![id as f64, 0.0],
            f: f.to_vec(),
            g: g.to_vec(),
            feasible: g.iter().all(|v| *v <= 0.0),
            detail: (),
        }
    }

    fn spec(objectives: usize, constraints: usize) -> ProblemSpec {
        ProblemSpec::new(vec![0.0, 0.0], vec![100.0, 100.0], objectives, constraints).unwrap()
    }

    #[test]
    fn constraint_dominance_definition() {
        assert!(constraint_dominates(&[-1.0, 0.0], &[0.0, 0.0]).unwrap());
        assert!(!constraint_dominates(&[0.0, 0.0], &[0.0, 0.0]).unwrap());
        assert!(!constraint_dominates(&[-1.0, 1.0], &[0.0, 0.0]).unwrap());
        assert_eq!(
            constraint_dominates(&[0.0], &[0.0, 1.0]),
            Err(HarmonyError::LengthMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn feasible_before_infeasible() {
        let hm = HarmonyMemory { members: vec![m(0, &[1.0], &[1.0]), m(1, &[50.0], &[-1.0])] };
        assert_eq!(rank_memory(&hm, &spec(1, 1)), vec![1, 0]);
    }

    #[test]
    fn infeasible_chain_order() {
        // A dominates B dominates C in constraint space; counts 0, 1, 2
        let a = m(0, &[0.0], &[-1.0, -1.0, 1.0]);
        let b = m(1, &[0.0], &[-1.0, -1.0, 2.0]);
        let c = m(2, &[0.0], &[-1.0, -1.0, 3.0]);
        let hm = HarmonyMemory { members: vec![c, a, b] };
        assert_eq!(rank_memory(&hm, &spec(1, 3)), vec![1, 2, 0]);
    }

    #[test]
    fn dominated_feasible_ranked_last() {
        let hm = HarmonyMemory {
            members: vec![m(0, &[3.0, 3.0, 3.0], &[]), m(1, &[1.0, 2.0, 3.0], &[]), m(2, &[2.0, 1.0, 3.0], &[])],
        };
        let order = rank_memory(&hm, &spec(3, 0));
        assert_eq!(*order.last().unwrap(), 0);
        assert_eq!(non_dominated_fronts(&[&[3.0, 3.0, 3.0], &[1.0, 2.0, 3.0], &[2.0, 1.0, 3.0]]), vec![1, 0, 0]);
    }

    #[test]
    fn infeasible_tie_broken_by_violation() {
        // incomparable, both with zero dominators
        let a = m(0, &[0.0], &[3.0, -1.0]);
        let b = m(1, &[0.0], &[-1.0, 1.0]);
        let hm = HarmonyMemory { members: vec![a, b] };
        assert_eq!(rank_memory(&hm, &spec(1, 2)), vec![1, 0]);
    }

    /// Brute-force pairwise comparator over the documented ordering keys.
    fn brute_before(hm: &HarmonyMemory<()>, sp: &ProblemSpec, i: usize, j: usize) -> bool {
        let (a, b) = (&hm.members[i], &hm.members[j]);
        if a.feasible != b.feasible {
            return a.feasible;
        }
        let key = |k: usize| -> (usize, f64) {
            let me = &hm.members[k];
            if me.feasible {
                // front depth via repeated peeling
                let feas: Vec<usize> = (0..hm.len()).filter(|&t| hm.members[t].feasible).collect();
                let mut remaining = feas.clone();
                let mut depth = 0;
                loop {
                    let front: Vec<usize> = remaining
                        .iter()
                        .copied()
                        .filter(|&p| !remaining.iter().any(|&q| objective_dominates(&hm.members[q].f, &hm.members[p].f)))
                        .collect();
                    if front.contains(&k) {
                        break;
                    }
                    remaining.retain(|p| !front.contains(p));
                    depth += 1;
                }
                (depth, normalized_sum(&me.f, &sp.objective_scales))
            } else {
                let count = (0..hm.len())
                    .filter(|&t| t != k && !hm.members[t].feasible && objective_dominates(&hm.members[t].g, &me.g))
                    .count();
                (count, me.total_violation())
            }
        };
        let (ka, kb) = (key(i), key(j));
        (ka.0, ka.1, i) < (kb.0, kb.1, j)
    }

    proptest! {
        #[test]
        fn constraint_dominance_irreflexive_transitive(
            a in prop::collection::vec(-3i32..3, 3),
            b in prop::collection::vec(-3i32..3, 3),
            c in prop::collection::vec(-3i32..3, 3),
        ) {
            let (a, b, c): (Vec<f64>, Vec<f64>, Vec<f64>) = (
                a.into_iter().map(f64::from).collect(),
                b.into_iter().map(f64::from).collect(),
                c.into_iter().map(f64::from).collect(),
            );
            prop_assert!(!constraint_dominates(&a, &a).unwrap());
            if constraint_dominates(&a, &b).unwrap() && constraint_dominates(&b, &c).unwrap() {
                prop_assert!(constraint_dominates(&a, &c).unwrap());
            }
        }

        #[test]
        fn ranking_is_total_and_matches_brute_force(
            rows in prop::collection::vec(
                (prop::collection::vec(0i32..4, 2), prop::collection::vec(-2i32..3, 2)),
                1..=8,
            )
        ) {
            let members: Vec<Member<()>> = rows
                .iter()
                .enumerate()
                .map(|(i, (f, g))| {
                    let f: Vec<f64> = f.iter().map(|v| f64::from(*v)).collect();
                    let g: Vec<f64> = g.iter().map(|v| f64::from(*v)).collect();
                    m(i as u64, &f, &g)
                })
                .collect();
            let hm = HarmonyMemory { members };
            let sp = spec(2, 2);
            let order = rank_memory(&hm, &sp);
            let mut sorted = order.clone();
            sorted.sort_unstable();
            prop_assert_eq!(sorted, (0..hm.len()).collect::<Vec<_>>());
            for w in order.windows(2) {
                prop_assert!(brute_before(&hm, &sp, w[0], w[1]));
            }
            let first_infeasible = order.iter().position(|&i| !hm.members[i].feasible).unwrap_or(order.len());
            prop_assert!(order[first_infeasible..].iter().all(|&i| !hm.members[i].feasible));
        }
    }
}
