//! Solves the dependent mirror angles of the B/C chain.
//!
//! For a trial mirror-B angle θ2 the virtual camera Q is reflected across L_B to
//! R, mirror C is the perpendicular bisector of RH (which fixes θ3), and C is
//! where that bisector meets line BR. The remaining condition ‖B−C‖ = c is a
//! scalar residual in θ2 that is bracketed on a coarse grid and bisected.

use serde::{Deserialize, Serialize};

use super::primitives::{reflect_across_line, Line, Point2};
use super::GeometryError;

const GUARD: f64 = 1e-12;
/// Bisection stops once the residual is this small (mm²).
pub const RESIDUAL_TOL: f64 = 1e-9;
/// A bisected bracket is only accepted as a root below this residual (mm²);
/// larger values indicate a sign change across a pole.
const ACCEPT_TOL: f64 = 1e-6;
const SCAN_START_DEG: f64 = 0.1;
const SCAN_STEP_DEG: f64 = 0.1;
const SCAN_STEPS: usize = 1798;

/// Outcome of the dependent-angle solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaSolution {
    /// Mirror-B angle, radians in (0, π).
    pub theta2: f64,
    /// Mirror-C angle, radians in [0, π).
    pub theta3: f64,
    pub r: Point2,
    pub c: Point2,
    pub report: SolverReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverReport {
    /// |‖B−C‖² − c²| at the returned root, mm².
    pub residual: f64,
    /// Number of admissible roots found by the scan.
    pub root_count: usize,
    pub multiple_roots: bool,
}

/// Mirror image of Q across L_B (through B at angle θ2).
pub fn reflect_q_to_r(b_point: Point2, theta2: f64, q: Point2) -> Point2 {
    reflect_across_line(q, &Line::new(b_point, theta2))
}

/// `tan θ3` for mirror C perpendicular to RH.
pub fn tan_theta3(r: Point2, h: Point2) -> Result<f64, GeometryError> {
    let dy = r.y - h.y;
    if dy.abs() < GUARD {
        return Err(GeometryError::DegenerateRH);
    }
    Ok((h.x - r.x) / dy)
}

/// Intersection of L_C (through the midpoint of RH with slope `tan_theta3`)
/// and line BR, in closed form.
pub fn point_c(r: Point2, h: Point2, tan_theta3: f64, b: Point2) -> Result<Point2, GeometryError> {
    let mid = r.midpoint(h);
    let run = b.x - r.x;
    if run.abs() < GUARD {
        // BR vertical
        return Ok(Point2::new(b.x, tan_theta3 * (b.x - mid.x) + mid.y));
    }
    let k = (b.y - r.y) / run;
    let denom = k - tan_theta3;
    if denom.abs() < GUARD {
        return Err(GeometryError::ParallelLines);
    }
    let x = (k * r.x - r.y - mid.x * tan_theta3 + mid.y) / denom;
    Ok(Point2::new(x, k * (x - r.x) + r.y))
}

struct Trial {
    r: Point2,
    c: Point2,
    tan3: f64,
    residual: f64,
}

struct ChainInput {
    b_point: Point2,
    q: Point2,
    h: Point2,
    b_len: f64,
    c_len: f64,
}

impl ChainInput {
    fn trial(&self, theta2: f64) -> Result<Trial, GeometryError> {
        let r = reflect_q_to_r(self.b_point, theta2, self.q);
        let tan3 = tan_theta3(r, self.h)?;
        let c = point_c(r, self.h, tan3, self.b_point)?;
        let b = self.b_point;
        let residual =
            c.x * (c.x - 2.0 * b.x) + c.y * (c.y - 2.0 * b.y) + self.b_len * self.b_len - self.c_len * self.c_len;
        Ok(Trial { r, c, tan3, residual })
    }

    fn residual(&self, theta2: f64) -> Option<f64> {
        self.trial(theta2).ok().map(|t| t.residual).filter(|v| v.is_finite())
    }

    fn bisect(&self, mut lo: f64, mut hi: f64, mut f_lo: f64) -> Option<f64> {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let f_mid = self.residual(mid)?;
            if f_mid.abs() <= RESIDUAL_TOL {
                return Some(mid);
            }
            if (f_mid < 0.0) == (f_lo < 0.0) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        let (best, val) = [lo, hi]
            .into_iter()
            .filter_map(|t| self.residual(t).map(|v| (t, v.abs())))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        (val <= ACCEPT_TOL).then_some(best)
    }

    /// C must sit strictly between B and R and on the +x side of the axis.
    fn admissible(&self, trial: &Trial) -> bool {
        let br = trial.r - self.b_point;
        let s = (trial.c - self.b_point).dot(br) / br.dot(br);
        s > 0.0 && s < 1.0 && trial.c.x > 0.0
    }
}

/// Finds θ2 and θ3 for the mirror B/C chain.
///
/// `b_point` is mirror B's reference point, `q` the virtual camera it serves,
/// `h` the real camera, and `b_len`/`c_len` the design lengths b and c. θ2 is
/// scanned over (0°, 180°) in 0.1° steps; every sign change of the residual is
/// bisected, roots with C outside segment BR or with x_C ≤ 0 are dropped, and
/// the smallest remaining θ2 is returned.
pub fn solve_theta23(
    b_point: Point2,
    q: Point2,
    h: Point2,
    b_len: f64,
    c_len: f64,
) -> Result<ThetaSolution, GeometryError> {
    let chain = ChainInput { b_point, q, h, b_len, c_len };
    let mut roots: Vec<(f64, Trial)> = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for step in 0..=SCAN_STEPS {
        let theta = (SCAN_START_DEG + SCAN_STEP_DEG * step as f64).to_radians();
        let Some(value) = chain.residual(theta) else {
            prev = None;
            continue;
        };
        if let Some((t_prev, v_prev)) = prev {
            let root = if v_prev == 0.0 {
                Some(t_prev)
            } else if (v_prev < 0.0) != (value < 0.0) {
                chain.bisect(t_prev, theta, v_prev)
            } else {
                None
            };
            if let Some(t) = root {
                if roots.last().map_or(true, |(last, _)| (t - *last).abs() > 1e-12) {
                    if let Ok(trial) = chain.trial(t) {
                        if chain.admissible(&trial) {
                            roots.push((t, trial));
                        }
                    }
                }
            }
        }
        prev = Some((theta, value));
    }

    let root_count = roots.len();
    let (theta2, trial) = roots.into_iter().next().ok_or(GeometryError::NoRoot)?;
    let theta3 = trial.tan3.atan().rem_euclid(std::f64::consts::PI);
    Ok(ThetaSolution {
        theta2,
        theta3,
        r: trial.r,
        c: trial.c,
        report: SolverReport {
            residual: trial.residual.abs(),
            root_count,
            multiple_roots: root_count > 1,
        },
    })
}
