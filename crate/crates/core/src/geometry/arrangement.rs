//! Full evaluation of a design into the mirror/camera arrangement.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use super::primitives::{circle_tangent_points, intersect, reflect_across_line, Line, Point2};
use super::scene::{DesignVector, SceneConfig};
use super::solver::{solve_theta23, SolverReport};
use super::GeometryError;

const GUARD: f64 = 1e-12;
/// Camera x-coordinate tolerance after reflecting P across mirror A.
const CAMERA_AXIS_TOL: f64 = 1e-6;

pub const OBJECTIVE_COUNT: usize = 3;
pub const CONSTRAINT_COUNT: usize = 6;

/// Every named point of an arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrangementPoints {
    pub a: Point2,
    pub b: Point2,
    pub c: Point2,
    pub h: Point2,
    pub p: Point2,
    pub q: Point2,
    pub r: Point2,
    pub v0: Point2,
    pub v1: Point2,
    pub v2: Point2,
    pub a0: Point2,
    pub a1: Point2,
    pub b0: Point2,
    pub b1: Point2,
    pub c1: Point2,
    pub c2: Point2,
    pub k1: Point2,
    pub k2: Point2,
}

/// A fully evaluated design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrangementSolution {
    pub x: DesignVector,
    pub d: f64,
    #[serde(rename = "theta2_deg", with = "super::degrees")]
    pub theta2: f64,
    #[serde(rename = "theta3_deg", with = "super::degrees")]
    pub theta3: f64,
    pub points: ArrangementPoints,
    pub beta_deg: f64,
    /// (f1, f2, f3) in mm.
    pub f: [f64; OBJECTIVE_COUNT],
    /// (g1..g6); g1 and g6 in degrees, the rest in mm.
    pub g: [f64; CONSTRAINT_COUNT],
    pub feasible: bool,
    pub solver: SolverReport,
}

/// A violated constraint: 1-based index and amount above zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub constraint: usize,
    pub amount: f64,
}

impl ArrangementSolution {
    pub fn violations(&self) -> Vec<Violation> {
        self.g
            .iter()
            .enumerate()
            .filter(|(_, g)| **g > 0.0)
            .map(|(i, g)| Violation { constraint: i + 1, amount: *g })
            .collect()
    }
}

/// The folded-path length b + c + d fixed by putting the camera on the y axis.
pub fn unfolded_path_length(a: f64, theta1: f64) -> Result<f64, GeometryError> {
    let t = theta1.tan();
    let denom = 1.0 + 2.0 * t - t * t;
    if !t.is_finite() || denom.abs() < GUARD {
        return Err(GeometryError::DegenerateAngle);
    }
    Ok(a * 2.0 * (t - t * t) / denom)
}

/// Length d of the H→C leg of the folded path.
pub fn derive_d(x: &DesignVector) -> Result<f64, GeometryError> {
    Ok(unfolded_path_length(x.a, x.theta1)? - x.b - x.c)
}

/// Points that follow directly from the design and d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasePoints {
    pub v0: Point2,
    pub v1: Point2,
    pub v2: Point2,
    pub a: Point2,
    pub b: Point2,
    pub p: Point2,
    pub q: Point2,
}

pub fn base_points(cfg: &SceneConfig, x: &DesignVector, d: f64) -> BasePoints {
    let half = cfg.half_diagonal();
    let path = (x.b + x.c + d) / SQRT_2;
    BasePoints {
        v0: Point2::new(half, 0.0),
        v1: Point2::new(0.0, half),
        v2: Point2::new(0.0, -half),
        a: Point2::new(x.a / SQRT_2, x.a / SQRT_2),
        b: Point2::new(x.b / SQRT_2, -x.b / SQRT_2),
        p: Point2::new(path, path),
        q: Point2::new(path, -path),
    }
}

pub fn mirror_a_line(a: f64, theta1: f64) -> Line {
    Line::new(Point2::new(a / SQRT_2, a / SQRT_2), theta1)
}

pub fn mirror_b_line(b: f64, theta2: f64) -> Line {
    Line::new(Point2::new(b / SQRT_2, -b / SQRT_2), theta2)
}

/// Real camera H: the image of virtual camera P in mirror A.
pub fn camera_h(a: f64, theta1: f64, p: Point2) -> Result<Point2, GeometryError> {
    let h = reflect_across_line(p, &mirror_a_line(a, theta1));
    if h.x.abs() > CAMERA_AXIS_TOL {
        return Err(GeometryError::ReflectionInconsistent { x_h: h.x });
    }
    Ok(h)
}

/// Mirror endpoints where each view's boundary rays meet its mirrors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorSegments {
    pub a0: Point2,
    pub a1: Point2,
    pub b0: Point2,
    pub b1: Point2,
    pub c1: Point2,
    pub c2: Point2,
}

/// Input for [`mirror_segments`].
#[derive(Debug, Clone, Copy)]
pub struct SegmentInput {
    pub base: BasePoints,
    pub r: Point2,
    pub mirror_a: Line,
    pub mirror_b: Line,
    pub mirror_c: Line,
}

/// Each virtual camera's beam is bounded by its two tangent rays to the
/// observed circle. The index-0 endpoint sits on the V0 side of each mirror.
/// The B-mirror rays are then followed to mirror C through virtual camera R.
/// C1 is the C endpoint with the smaller x.
pub fn mirror_segments(cfg: &SceneConfig, input: &SegmentInput) -> Result<MirrorSegments, GeometryError> {
    let base = &input.base;
    let [p_near_v0, p_near_v1] = split_tangents(base.p, cfg.r, base.v0)?;
    let a0 = intersect(&Line::through(base.p, p_near_v0), &input.mirror_a)?;
    let a1 = intersect(&Line::through(base.p, p_near_v1), &input.mirror_a)?;

    let [q_near_v0, q_near_v2] = split_tangents(base.q, cfg.r, base.v0)?;
    let b0 = intersect(&Line::through(base.q, q_near_v0), &input.mirror_b)?;
    let b1 = intersect(&Line::through(base.q, q_near_v2), &input.mirror_b)?;

    let e0 = intersect(&Line::through(input.r, b0), &input.mirror_c)?;
    let e1 = intersect(&Line::through(input.r, b1), &input.mirror_c)?;
    let (c1, c2) = if e0.x <= e1.x { (e0, e1) } else { (e1, e0) };
    Ok(MirrorSegments { a0, a1, b0, b1, c1, c2 })
}

/// Tangent points from `eye`, the one nearer `corner` first.
fn split_tangents(eye: Point2, radius: f64, corner: Point2) -> Result<[Point2; 2], GeometryError> {
    let [t0, t1] = circle_tangent_points(eye, radius)?;
    Ok(if t0.distance(corner) <= t1.distance(corner) { [t0, t1] } else { [t1, t0] })
}

/// Points on the lower-right face (V0→V2) vertically above C1 and C2.
pub fn clearance_k(cfg: &SceneConfig, c1: Point2, c2: Point2) -> [Point2; 2] {
    let half = cfg.half_diagonal();
    let on_edge = |c: Point2| {
        let x = c.x.clamp(0.0, half);
        Point2::new(x, x - half)
    };
    [on_edge(c1), on_edge(c2)]
}

/// Largest deviation, in degrees, of a ray from H to any endpoint from the +y axis.
pub fn view_angle_beta(h: Point2, endpoints: &[Point2]) -> f64 {
    endpoints
        .iter()
        .map(|e| (e.x - h.x).atan2(e.y - h.y).abs().to_degrees())
        .fold(0.0, f64::max)
}

/// Direction of the ray from `from` to `to`, degrees from +x.
fn ray_angle_deg(from: Point2, to: Point2) -> f64 {
    (to.y - from.y).atan2(to.x - from.x).to_degrees()
}

/// (f1, f2, f3): folded path length, vertical extent x_B, lateral extent y_A − y_H.
pub fn objectives(x: &DesignVector, d: f64, a: Point2, b: Point2, h: Point2) -> [f64; OBJECTIVE_COUNT] {
    [x.b + x.c + d, b.x, a.y - h.y]
}

/// Constraint vector (g1..g6); feasible iff every entry ≤ 0.
pub fn constraints(cfg: &SceneConfig, pts: &ArrangementPoints, beta_deg: f64) -> [f64; CONSTRAINT_COUNT] {
    [
        ray_angle_deg(pts.h, pts.v0) - ray_angle_deg(pts.h, pts.c2) + cfg.min_angular_gap_deg,
        pts.v0.x - pts.a0.x + cfg.min_a0_clearance,
        cfg.min_c1_x - pts.c1.x,
        pts.c1.y - pts.k1.y + cfg.c1_clearance,
        pts.c2.y - pts.k2.y + cfg.c2_clearance,
        beta_deg - cfg.max_beta_deg,
    ]
}

/// Evaluates a design into its complete arrangement.
///
/// Pure: the same scene and design always produce the same solution.
pub fn evaluate_design(cfg: &SceneConfig, x: &DesignVector) -> Result<ArrangementSolution, GeometryError> {
    let d = derive_d(x)?;
    if !(d > 0.0) {
        return Err(GeometryError::NonPositivePath { d });
    }
    let base = base_points(cfg, x, d);
    let h = camera_h(x.a, x.theta1, base.p)?;
    let theta = solve_theta23(base.b, base.q, h, x.b, x.c)?;

    let input = SegmentInput {
        base,
        r: theta.r,
        mirror_a: mirror_a_line(x.a, x.theta1),
        mirror_b: mirror_b_line(x.b, theta.theta2),
        mirror_c: Line::new(theta.r.midpoint(h), theta.theta3),
    };
    let seg = mirror_segments(cfg, &input)?;
    let [k1, k2] = clearance_k(cfg, seg.c1, seg.c2);
    let beta_deg = view_angle_beta(h, &[seg.a0, seg.a1, seg.c1, seg.c2]);

    let points = ArrangementPoints {
        a: base.a,
        b: base.b,
        c: theta.c,
        h,
        p: base.p,
        q: base.q,
        r: theta.r,
        v0: base.v0,
        v1: base.v1,
        v2: base.v2,
        a0: seg.a0,
        a1: seg.a1,
        b0: seg.b0,
        b1: seg.b1,
        c1: seg.c1,
        c2: seg.c2,
        k1,
        k2,
    };
    let f = objectives(x, d, base.a, base.b, h);
    let g = constraints(cfg, &points, beta_deg);
    let finite = f.iter().chain(g.iter()).all(|v| v.is_finite());
    if !finite {
        return Err(GeometryError::NonFinite);
    }
    Ok(ArrangementSolution {
        x: *x,
        d,
        theta2: theta.theta2,
        theta3: theta.theta3,
        points,
        beta_deg,
        f,
        g,
        feasible: g.iter().all(|v| *v <= 0.0),
        solver: theta.report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_4;

    fn row1() -> DesignVector {
        DesignVector::new(187.879, 255.392, 181.091, 2.612)
    }

    #[test]
    fn ratio_is_two_at_135_degrees() {
        let theta = 3.0 * FRAC_PI_4;
        assert_abs_diff_eq!(unfolded_path_length(100.0, theta).unwrap(), 200.0, epsilon = 1e-9);
    }

    #[test]
    fn degenerate_denominator() {
        // 1 + 2t − t² = 0 at t = 1 + √2
        let theta = (1.0 + SQRT_2).atan();
        assert_eq!(unfolded_path_length(200.0, theta), Err(GeometryError::DegenerateAngle));
    }

    #[test]
    fn table_row1_unfolded_length_within_one_percent() {
        let total = unfolded_path_length(187.879, 2.612).unwrap();
        assert!((total - 680.596).abs() / 680.596 < 0.01, "{total}");
    }

    #[test]
    fn base_points_case_study() {
        let cfg = SceneConfig::default();
        let x = row1();
        let bp = base_points(&cfg, &x, derive_d(&x).unwrap());
        assert_abs_diff_eq!(bp.v0.x, 83.438_600_180_012_6, epsilon = 1e-9);
        assert_abs_diff_eq!(bp.b.x, 180.589, epsilon = 5e-4);
        assert_abs_diff_eq!(bp.b.y, -180.589, epsilon = 5e-4);
        assert_abs_diff_eq!(bp.a.x, bp.a.y, epsilon = 0.0);
    }

    #[test]
    fn camera_at_135_degrees_lands_on_axis() {
        let theta = 3.0 * FRAC_PI_4;
        let a = 220.0;
        let total = unfolded_path_length(a, theta).unwrap();
        let p = Point2::new(total / SQRT_2, total / SQRT_2);
        let h = camera_h(a, theta, p).unwrap();
        assert_abs_diff_eq!(h.x, 0.0, epsilon = 1e-9);
        let back = reflect_across_line(h, &mirror_a_line(a, theta));
        assert_abs_diff_eq!(back.distance(p), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn camera_off_axis_is_reported() {
        let p = Point2::new(500.0, 500.0);
        let err = camera_h(200.0, 2.6, p).unwrap_err();
        assert!(matches!(err, GeometryError::ReflectionInconsistent { .. }));
    }

    #[test]
    fn clearance_points_on_edge() {
        let cfg = SceneConfig::default();
        let half = cfg.half_diagonal();
        let [k_low, k_high] = clearance_k(&cfg, Point2::new(0.0, -150.0), Point2::new(half, -150.0));
        assert_abs_diff_eq!(k_low.y, -half, epsilon = 1e-12);
        assert_abs_diff_eq!(k_high.distance(Point2::new(half, 0.0)), 0.0, epsilon = 1e-12);
        let [k, _] = clearance_k(&cfg, Point2::new(40.0, -100.0), Point2::new(50.0, -90.0));
        assert_abs_diff_eq!(k.x, 40.0, epsilon = 1e-12);
        assert_abs_diff_eq!(k.y, 40.0 - 83.438_600_180_012_6, epsilon = 1e-9);
    }

    #[test]
    fn beta_contributions() {
        let h = Point2::new(0.0, -100.0);
        assert_abs_diff_eq!(view_angle_beta(h, &[Point2::new(0.0, 50.0)]), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(view_angle_beta(h, &[Point2::new(30.0, -70.0)]), 45.0, epsilon = 1e-9);
        assert_abs_diff_eq!(
            view_angle_beta(h, &[Point2::new(0.0, 50.0), Point2::new(-30.0, -70.0)]),
            45.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn constraint_boundaries() {
        let cfg = SceneConfig::default();
        let x = row1();
        let mut sol = evaluate_design(&cfg, &x).unwrap();
        sol.points.a0.x = sol.points.v0.x + 3.0;
        sol.points.c1.x = 2.0;
        let g = constraints(&cfg, &sol.points, sol.beta_deg);
        assert_eq!(g[1], 0.0);
        assert_eq!(g[2], 0.0);
    }

    #[test]
    fn table_row1_is_feasible() {
        let sol = evaluate_design(&SceneConfig::default(), &row1()).unwrap();
        assert!(sol.feasible, "violations: {:?}", sol.violations());
        assert!(sol.beta_deg < 17.5);
        assert_abs_diff_eq!(sol.f[1], 255.392 / SQRT_2, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_tangent_fails() {
        let cfg = SceneConfig::default();
        let x = DesignVector::from_degrees(200.0, 200.0, 200.0, 180.0);
        assert!(evaluate_design(&cfg, &x).is_err());
    }

    #[test]
    fn evaluation_is_bitwise_deterministic() {
        let cfg = SceneConfig::default();
        let a = evaluate_design(&cfg, &row1()).unwrap();
        let b = evaluate_design(&cfg, &row1()).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
