//! Planar points, lines, reflection and intersection.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use super::GeometryError;

/// Guard for nearly parallel lines (cross product of unit directions).
pub const PARALLEL_EPS: f64 = 1e-12;

/// A point in the top-view frame, millimetres.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

/// An infinite line given by a point on it and a direction angle (radians).
///
/// Angles are taken modulo π; `angle` and `angle + π` describe the same line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub origin: Point2,
    pub angle: f64,
}

impl Line {
    pub fn new(origin: Point2, angle: f64) -> Self {
        Self { origin, angle }
    }

    /// Line through two distinct points.
    pub fn through(p: Point2, q: Point2) -> Self {
        let d = q - p;
        Self::new(p, d.y.atan2(d.x))
    }

    pub fn direction(&self) -> Point2 {
        Point2::new(self.angle.cos(), self.angle.sin())
    }

    /// Signed distance of `p` from the line (positive to the left of the direction).
    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.direction().cross(p - self.origin)
    }

    /// Orthogonal projection of `p` onto the line.
    pub fn project(&self, p: Point2) -> Point2 {
        let dir = self.direction();
        self.origin + dir * dir.dot(p - self.origin)
    }
}

/// Mirror image of `p` across `line`.
pub fn reflect_across_line(p: Point2, line: &Line) -> Point2 {
    let foot = line.project(p);
    foot * 2.0 - p
}

/// Intersection point of two lines.
pub fn intersect(l1: &Line, l2: &Line) -> Result<Point2, GeometryError> {
    let d1 = l1.direction();
    let d2 = l2.direction();
    let denom = d1.cross(d2);
    if denom.abs() < PARALLEL_EPS {
        return Err(GeometryError::ParallelLines);
    }
    let t = (l2.origin - l1.origin).cross(d2) / denom;
    Ok(l1.origin + d1 * t)
}

/// Tangent points on the circle of radius `radius` centred at the origin as seen
/// from `eye`, ordered clockwise-first (the first point lies on the clockwise
/// side of the ray from `eye` to the centre, seen from the centre).
pub fn circle_tangent_points(eye: Point2, radius: f64) -> Result<[Point2; 2], GeometryError> {
    let dist = eye.norm();
    if dist <= radius {
        return Err(GeometryError::InsideObservedCircle);
    }
    let bearing = eye.y.atan2(eye.x);
    let offset = (radius / dist).acos();
    let at = |a: f64| Point2::new(radius * a.cos(), radius * a.sin());
    Ok([at(bearing - offset), at(bearing + offset)])
}
