//! The mirror arrangement as a harmony search problem.

use std::f64::consts::SQRT_2;

use crate::geometry::{
    evaluate_design, ArrangementSolution, DesignBounds, DesignVector, GeometryError, SceneConfig,
    CONSTRAINT_COUNT, OBJECTIVE_COUNT,
};
use crate::harmony::{Evaluation, Evaluator, GeometricFailure, HarmonyError, ProblemSpec};

/// Evaluates genomes `[a, b, c, theta1_rad]` with a fixed scene.
#[derive(Debug, Clone)]
pub struct MirrorProblem {
    pub scene: SceneConfig,
    pub bounds: DesignBounds,
}

impl MirrorProblem {
    pub fn new(scene: SceneConfig, bounds: DesignBounds) -> Result<Self, GeometryError> {
        scene.validate()?;
        bounds.validate()?;
        Ok(Self { scene, bounds })
    }

    /// Bounds plus objective scales: f1 and f3 by b_max + c_max, f2 by b_max/√2.
    pub fn spec(&self) -> Result<ProblemSpec, HarmonyError> {
        let (lower, upper) = self.bounds.genome_bounds();
        let path = self.bounds.b_mm.1 + self.bounds.c_mm.1;
        ProblemSpec::new(lower, upper, OBJECTIVE_COUNT, CONSTRAINT_COUNT)?
            .with_objective_scales(vec![path, self.bounds.b_mm.1 / SQRT_2, path])
    }
}

impl Default for MirrorProblem {
    fn default() -> Self {
        Self { scene: SceneConfig::default(), bounds: DesignBounds::default() }
    }
}

impl Evaluator for MirrorProblem {
    type Detail = ArrangementSolution;

    fn evaluate(&self, x: &[f64]) -> Result<Evaluation<ArrangementSolution>, GeometricFailure> {
        let design = DesignVector::from_slice(x);
        let sol = evaluate_design(&self.scene, &design).map_err(|e| GeometricFailure::new(e.to_string()))?;
        Ok(Evaluation { f: sol.f.to_vec(), g: sol.g.to_vec(), detail: sol })
    }
}
