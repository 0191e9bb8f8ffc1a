use super::ranking::objective_dominates;
use super::{HarmonyError, Member};

/// Bounded set of mutually non-dominated feasible members.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoArchive<D> {
    capacity: usize,
    members: Vec<Member<D>>,
}

impl<D> ParetoArchive<D> {
    pub fn new(capacity: usize) -> Self {
        Self { capacity, members: Vec::with_capacity(capacity + 1) }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn members(&self) -> &[Member<D>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Offers `member` to the archive and returns whether it is still held
    /// afterwards.
    ///
    /// Members weakly dominated by an archived one (including exact objective
    /// duplicates) are refused. Otherwise the newcomer evicts everything it
    /// dominates; on overflow the member with the smallest crowding distance
    /// goes, with per-objective extremes never evicted.
    pub fn update(&mut self, member: Member<D>) -> Result<bool, HarmonyError> {
        if !member.feasible {
            return Err(HarmonyError::InfeasibleMember);
        }
        let weakly_dominated = self
            .members
            .iter()
            .any(|a| a.f == member.f || objective_dominates(&a.f, &member.f));
        if weakly_dominated {
            return Ok(false);
        }
        self.members.retain(|a| !objective_dominates(&member.f, &a.f));
        let id = member.id;
        self.members.push(member);
        while self.members.len() > self.capacity {
            let f: Vec<&[f64]> = self.members.iter().map(|m| m.f.as_slice()).collect();
            let crowd = crowding_distances(&f);
            let victim = crowd
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, _)| i)
                .expect("archive is non-empty");
            self.members.remove(victim);
        }
        Ok(self.members.iter().any(|m| m.id == id))
    }
}

/// NSGA-II crowding distance of each objective vector within the set.
///
/// Extremes of every objective get infinity; interior points accumulate the
/// normalized gap between their neighbours.
pub fn crowding_distances(objectives: &[&[f64]]) -> Vec<f64> {
    let n = objectives.len();
    let mut dist = vec![0.0; n];
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let m = objectives[0].len();
    for k in 0..m {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| objectives[a][k].total_cmp(&objectives[b][k]).then(a.cmp(&b)));
        let lo = objectives[order[0]][k];
        let hi = objectives[order[n - 1]][k];
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        let span = hi - lo;
        if span <= 0.0 {
            continue;
        }
        for w in 1..n - 1 {
            let gap = objectives[order[w + 1]][k] - objectives[order[w - 1]][k];
            dist[order[w]] += gap / span;
        }
    }
    dist
}
