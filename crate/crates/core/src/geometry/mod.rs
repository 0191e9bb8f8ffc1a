//! Top-view geometry of the single-camera, three-mirror arrangement.
//!
//! Frame: the observed body's centre is the origin, its square outline is
//! rotated 45° so that corner V0 lies on +x, and the camera H sits on the
//! −y axis. Mirror A folds the camera's view onto the upper-right face
//! (virtual camera P); mirrors C then B fold it onto the lower-right face
//! (virtual camera Q, via the intermediate image R).

mod arrangement;
mod primitives;
mod scene;
mod solver;

pub use arrangement::{
    base_points, camera_h, clearance_k, constraints, derive_d, evaluate_design, mirror_a_line,
    mirror_b_line, mirror_segments, objectives, unfolded_path_length, view_angle_beta,
    ArrangementPoints, ArrangementSolution, BasePoints, MirrorSegments, SegmentInput, Violation,
    CONSTRAINT_COUNT, OBJECTIVE_COUNT,
};
pub use primitives::{circle_tangent_points, intersect, reflect_across_line, Line, Point2};
pub use scene::{DesignBounds, DesignVector, SceneConfig};
pub use solver::{point_c, reflect_q_to_r, solve_theta23, tan_theta3, SolverReport, ThetaSolution};

use thiserror::Error;

/// Reasons a design cannot be turned into an arrangement.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("mirror-A angle makes the path-length denominator vanish")]
    DegenerateAngle,
    #[error("camera does not land on the y axis (x_H = {x_h})")]
    ReflectionInconsistent { x_h: f64 },
    #[error("no valid mirror-C solution")]
    NoRoot,
    #[error("R and H share a y coordinate; mirror C is undefined")]
    DegenerateRH,
    #[error("lines are parallel")]
    ParallelLines,
    #[error("camera-to-mirror-C length d = {d} is not positive")]
    NonPositivePath { d: f64 },
    #[error("virtual camera lies inside the observed circle")]
    InsideObservedCircle,
    #[error("non-finite value in evaluated geometry")]
    NonFinite,
    #[error("invalid scene: {0}")]
    InvalidScene(String),
}

/// Serde adapter: radians in memory, degrees on the wire.
pub(crate) mod degrees {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(radians: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(radians.to_degrees())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        f64::deserialize(d).map(f64::to_radians)
    }
}
