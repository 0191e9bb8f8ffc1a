use serde::{Deserialize, Serialize};

use super::IoError;
use crate::geometry::{ArrangementSolution, SceneConfig};

/// Version stamped on every JSON document and API response.
pub const SCHEMA_VERSION: u32 = 1;

/// A single evaluated arrangement together with the scene it was evaluated in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDocument {
    pub schema_version: u32,
    pub scene: SceneConfig,
    /// Violated constraints (1-based) with their amounts.
    pub violations: Vec<crate::geometry::Violation>,
    pub solution: ArrangementSolution,
}

impl SolutionDocument {
    pub fn new(scene: SceneConfig, solution: ArrangementSolution) -> Self {
        Self { schema_version: SCHEMA_VERSION, scene, violations: solution.violations(), solution }
    }
}

/// Reads a [`SolutionDocument`], or a bare solution drawn in the default scene.
pub fn solution_from_json(text: &str) -> Result<SolutionDocument, IoError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("solution").is_some() {
        let doc: SolutionDocument = serde_json::from_value(value)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(IoError::Invalid(format!("unsupported schema_version {}", doc.schema_version)));
        }
        doc.scene.validate().map_err(|e| IoError::Invalid(e.to_string()))?;
        return Ok(doc);
    }
    let solution: ArrangementSolution = serde_json::from_value(value)?;
    Ok(SolutionDocument::new(SceneConfig::default(), solution))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{evaluate_design, DesignVector};

    #[test]
    fn round_trip_with_and_without_envelope() {
        let scene = SceneConfig::default();
        let sol = evaluate_design(&scene, &DesignVector::from_degrees(187.879, 255.392, 181.091, 149.679)).unwrap();
        let doc = SolutionDocument::new(scene, sol.clone());
        let back = solution_from_json(&serde_json::to_string(&doc).unwrap()).unwrap();
        // angles cross the interface in degrees, so only they may move by an ulp
        assert_eq!((back.solution.points, back.solution.f, back.solution.g), (sol.points, sol.f, sol.g));
        assert!((back.solution.theta2 - sol.theta2).abs() < 1e-14);
        assert!((back.solution.x.theta1 - sol.x.theta1).abs() < 1e-14);
        assert_eq!(back.scene, doc.scene);
        let bare = solution_from_json(&serde_json::to_string(&sol).unwrap()).unwrap();
        assert_eq!(bare.solution.points, sol.points);
        assert!(solution_from_json(r#"{"solution": 3}"#).is_err());
    }
}
