use serde::{Deserialize, Serialize};

use super::GeometryError;

/// Fixed dimensions of the observed body and the clearance constants used by
/// the constraint vector. Lengths in millimetres, angles in degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SceneConfig {
    /// Radius of the circular region that every view must cover.
    pub r: f64,
    /// Side length of the square outline of the observed body.
    pub l_v: f64,
    pub min_a0_clearance: f64,
    pub min_c1_x: f64,
    pub min_angular_gap_deg: f64,
    pub c1_clearance: f64,
    pub c2_clearance: f64,
    pub max_beta_deg: f64,
}

impl Default for SceneConfig {
    fn default() -> Self {
        Self {
            r: 17.0,
            l_v: 118.0,
            min_a0_clearance: 3.0,
            min_c1_x: 2.0,
            min_angular_gap_deg: 1.0,
            c1_clearance: 30.0,
            c2_clearance: 10.0,
            max_beta_deg: 17.5,
        }
    }
}

impl SceneConfig {
    pub fn validate(&self) -> Result<(), GeometryError> {
        if !(self.r > 0.0 && self.r.is_finite()) {
            return Err(GeometryError::InvalidScene("r must be positive".into()));
        }
        if !(self.l_v > 2.0 * self.r && self.l_v.is_finite()) {
            return Err(GeometryError::InvalidScene(
                "l_v must exceed the circle diameter 2r".into(),
            ));
        }
        if !self.max_beta_deg.is_finite() || self.max_beta_deg <= 0.0 {
            return Err(GeometryError::InvalidScene("max_beta_deg must be positive".into()));
        }
        Ok(())
    }

    /// Half diagonal of the square: distance from the centre to each corner.
    pub fn half_diagonal(&self) -> f64 {
        self.l_v / std::f64::consts::SQRT_2
    }
}

/// The four free design variables. `theta1` is in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignVector {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    #[serde(rename = "theta1_deg", with = "super::degrees")]
    pub theta1: f64,
}

impl DesignVector {
    pub fn new(a: f64, b: f64, c: f64, theta1: f64) -> Self {
        Self { a, b, c, theta1 }
    }

    pub fn from_degrees(a: f64, b: f64, c: f64, theta1_deg: f64) -> Self {
        Self::new(a, b, c, theta1_deg.to_radians())
    }

    /// Genome layout used by the optimizer: `[a, b, c, theta1_rad]`.
    pub fn to_array(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.theta1]
    }

    pub fn from_slice(x: &[f64]) -> Self {
        assert_eq!(x.len(), 4, "design vector has four components");
        Self::new(x[0], x[1], x[2], x[3])
    }
}

/// Closed (min, max) interval per design variable; `theta1` bounds in degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DesignBounds {
    pub a_mm: (f64, f64),
    pub b_mm: (f64, f64),
    pub c_mm: (f64, f64),
    pub theta1_deg: (f64, f64),
}

impl Default for DesignBounds {
    fn default() -> Self {
        Self {
            a_mm: (150.0, 400.0),
            b_mm: (150.0, 400.0),
            c_mm: (150.0, 400.0),
            theta1_deg: (145.0, 180.0),
        }
    }
}

impl DesignBounds {
    /// Lower and upper genome bounds in optimizer units (theta1 in radians).
    pub fn genome_bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let lower = vec![self.a_mm.0, self.b_mm.0, self.c_mm.0, self.theta1_deg.0.to_radians()];
        let upper = vec![self.a_mm.1, self.b_mm.1, self.c_mm.1, self.theta1_deg.1.to_radians()];
        (lower, upper)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        for (name, (lo, hi)) in self.named() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(GeometryError::InvalidScene(format!(
                    "bounds for {name} must satisfy min < max"
                )));
            }
        }
        Ok(())
    }

    pub fn contains(&self, x: &DesignVector) -> bool {
        let within = |v: f64, (lo, hi): (f64, f64)| v >= lo && v <= hi;
        within(x.a, self.a_mm)
            && within(x.b, self.b_mm)
            && within(x.c, self.c_mm)
            && within(x.theta1.to_degrees(), self.theta1_deg)
    }

    fn named(&self) -> [(&'static str, (f64, f64)); 4] {
        [
            ("a_mm", self.a_mm),
            ("b_mm", self.b_mm),
            ("c_mm", self.c_mm),
            ("theta1_deg", self.theta1_deg),
        ]
    }
}
