use serde::{Deserialize, Serialize};

use super::HarmonyError;

/// Harmony search settings. Defaults reproduce the mirror case study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HsParams {
    pub hms: usize,
    pub hmcr: f64,
    pub par: f64,
    /// Pitch-adjust bandwidth as a fraction of each dimension's range.
    pub bandwidth_fraction: f64,
    pub iterations: usize,
    pub batch_size: usize,
    pub archive_capacity: usize,
    /// Minimum bound-normalized distance between memory members.
    pub diversity_delta: f64,
    pub seed: u64,
    /// Weights for the penalty baseline; unused by the Pareto engine.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub penalty_weights: Option<Vec<f64>>,
}

impl Default for HsParams {
    fn default() -> Self {
        Self {
            hms: 50,
            hmcr: 0.75,
            par: 0.4,
            bandwidth_fraction: 0.05,
            iterations: 100,
            batch_size: 20,
            archive_capacity: 10,
            diversity_delta: 1e-6,
            seed: 1,
            penalty_weights: None,
        }
    }
}

impl HsParams {
    pub fn validate(&self) -> Result<(), HarmonyError> {
        let fail = |m: &str| Err(HarmonyError::InvalidParams(m.to_string()));
        if self.hms < 2 {
            return fail("hms must be at least 2");
        }
        if !(0.0..=1.0).contains(&self.hmcr) {
            return fail("hmcr must lie in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.par) {
            return fail("par must lie in [0, 1]");
        }
        if !(self.bandwidth_fraction > 0.0 && self.bandwidth_fraction.is_finite()) {
            return fail("bandwidth_fraction must be positive");
        }
        if self.batch_size == 0 {
            return fail("batch_size must be positive");
        }
        if self.archive_capacity == 0 {
            return fail("archive_capacity must be positive");
        }
        if !(self.diversity_delta >= 0.0 && self.diversity_delta.is_finite()) {
            return fail("diversity_delta must be non-negative");
        }
        if let Some(w) = &self.penalty_weights {
            if w.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
                return fail("penalty weights must be non-negative");
            }
        }
        Ok(())
    }
}
