//! Reference data and independent geometry oracles shared by integration tests.
#![allow(dead_code)]

use std::f64::consts::SQRT_2;

/// Published Pareto table: a, b, c (mm), θ1 (rad), f1, f2, f3 (mm).
pub const TABLE1: [[f64; 7]; 10] = [
    [187.879, 255.392, 181.091, 2.612, 680.596, 180.589, 474.469],
    [188.501, 254.701, 179.621, 2.613, 684.255, 180.101, 477.499],
    [189.329, 257.592, 184.673, 2.610, 678.156, 182.145, 470.137],
    [189.329, 255.584, 177.641, 2.611, 679.927, 180.725, 471.979],
    [189.329, 257.440, 183.339, 2.611, 679.927, 182.038, 471.979],
    [189.329, 257.338, 183.339, 2.611, 679.927, 181.966, 471.979],
    [189.185, 260.852, 181.046, 2.610, 677.640, 184.451, 469.780],
    [189.329, 257.195, 178.050, 2.611, 679.927, 181.864, 471.979],
    [189.185, 260.852, 181.046, 2.610, 677.640, 184.451, 469.780],
    [189.185, 260.852, 181.046, 2.610, 677.640, 184.451, 469.780],
];

pub type V = (f64, f64);

fn sub(a: V, b: V) -> V {
    (a.0 - b.0, a.1 - b.1)
}

fn dot(a: V, b: V) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

fn len(a: V) -> f64 {
    dot(a, a).sqrt()
}

/// Mirror image of `p` in the line through `o` with direction angle `angle`.
pub fn mirror(p: V, o: V, angle: f64) -> V {
    let u = (angle.cos(), angle.sin());
    let w = sub(p, o);
    let s = 2.0 * dot(w, u);
    (o.0 + s * u.0 - w.0, o.1 + s * u.1 - w.1)
}

/// b + c + d from the camera-on-axis condition.
pub fn folded_length(a: f64, theta1: f64) -> f64 {
    let t = theta1.tan();
    a * 2.0 * (t - t * t) / (1.0 + 2.0 * t - t * t)
}

/// Camera H by direct reflection of P across mirror A.
pub fn camera(a: f64, theta1: f64) -> V {
    let l = folded_length(a, theta1) / SQRT_2;
    mirror((l, l), (a / SQRT_2, a / SQRT_2), theta1)
}

/// Brute-force θ2 (rad): scan in 0.01° steps for the smallest angle where
/// the point C at distance c from B along BR is equidistant from H and R,
/// with C strictly inside BR and x_C > 0. Linear interpolation inside the
/// bracketing step. Returns (θ2, θ3) in degrees.
pub fn scan_theta23(a: f64, b: f64, c: f64, theta1: f64) -> Option<(f64, f64)> {
    let l = folded_length(a, theta1) / SQRT_2;
    let q = (l, -l);
    let bp = (b / SQRT_2, -b / SQRT_2);
    let h = camera(a, theta1);
    let eval = |deg: f64| -> Option<(f64, V, V)> {
        let r = mirror(q, bp, deg.to_radians());
        let br = sub(r, bp);
        let n = len(br);
        if n <= c {
            return None;
        }
        let cp = (bp.0 + c * br.0 / n, bp.1 + c * br.1 / n);
        if cp.0 <= 0.0 {
            return None;
        }
        Some((dot(sub(cp, h), sub(cp, h)) - dot(sub(cp, r), sub(cp, r)), r, cp))
    };
    let mut prev: Option<(f64, f64)> = None;
    for i in 1..18000 {
        let deg = i as f64 * 0.01;
        match eval(deg) {
            Some((v, _, _)) => {
                if let Some((d0, v0)) = prev {
                    if (v0 < 0.0) != (v < 0.0) {
                        let root = d0 + (deg - d0) * v0 / (v0 - v);
                        let (_, r, _) = eval(root)?;
                        let rh = sub(h, r);
                        let theta3 = (rh.1.atan2(rh.0).to_degrees() + 90.0).rem_euclid(180.0);
                        return Some((root, theta3));
                    }
                }
                prev = Some((deg, v));
            }
            None => prev = None,
        }
    }
    None
}
