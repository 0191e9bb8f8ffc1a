//! Arrangement drawing. One SVG user unit is one millimetre; the model is drawn
//! inside a `scale(1,-1)` group so path coordinates equal model coordinates.

use std::fmt::Write;

use crate::geometry::{ArrangementSolution, Line, Point2, SceneConfig};

/// Class shared by the three mirror `<path>` elements.
pub const MIRROR_CLASS: &str = "mirror";
const MARGIN: f64 = 25.0;
const SCALE_BAR_MM: f64 = 50.0;

fn fmt(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

/// Foot of the perpendicular from the origin: the tangent point of a ray that
/// grazes the observed circle.
fn grazing_point(from: Point2, through: Point2) -> Point2 {
    Line::through(from, through).project(Point2::ORIGIN)
}

/// The B endpoint on the same line through R as `c`.
fn b_partner(sol: &ArrangementSolution, c: Point2) -> Point2 {
    let pts = &sol.points;
    let off = |b: Point2| (b - pts.r).cross(c - pts.r).abs() / (b - pts.r).norm();
    if off(pts.b0) <= off(pts.b1) { pts.b0 } else { pts.b1 }
}

pub fn render_svg(scene: &SceneConfig, sol: &ArrangementSolution) -> String {
    let pts = &sol.points;
    let half = scene.half_diagonal();
    let v3 = Point2::new(-half, 0.0);

    let mut extent = vec![pts.h, pts.p, pts.q, pts.a0, pts.a1, pts.b0, pts.b1, pts.c1, pts.c2, pts.v1, pts.v2, v3];
    extent.push(pts.v0);
    let min_x = extent.iter().map(|p| p.x).fold(f64::INFINITY, f64::min) - MARGIN;
    let max_x = extent.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max) + MARGIN;
    let min_y = extent.iter().map(|p| p.y).fold(f64::INFINITY, f64::min) - MARGIN;
    let max_y = extent.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max) + MARGIN;
    let (w, h) = (max_x - min_x, max_y - min_y);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}mm" height="{}mm">"#,
        fmt(min_x),
        fmt(-max_y),
        fmt(w),
        fmt(h),
        fmt(w),
        fmt(h)
    );
    s.push_str(
        "<style>.body{fill:#eef3f8;stroke:#49627a;stroke-width:0.8}.target{fill:none;stroke:#888;stroke-dasharray:3 2}\
.mirror{stroke:#0b4f8a;stroke-width:3;fill:none;stroke-linecap:round}.ray{stroke:#d9822b;stroke-width:0.6}\
.virtual{stroke:#aaa;stroke-width:0.5;stroke-dasharray:4 3}.camera{fill:#c0392b}.vcam{fill:none;stroke:#c0392b}\
text{font:9px sans-serif}</style>\n",
    );
    s.push_str("<g id=\"model\" transform=\"scale(1,-1)\">\n");

    let poly: Vec<String> = [pts.v0, pts.v1, v3, pts.v2].iter().map(|p| format!("{},{}", fmt(p.x), fmt(p.y))).collect();
    let _ = writeln!(s, r#"<polygon class="body" points="{}"/>"#, poly.join(" "));
    let _ = writeln!(s, r#"<circle class="target" cx="0" cy="0" r="{}"/>"#, fmt(scene.r));

    let line = |s: &mut String, class: &str, a: Point2, b: Point2| {
        let _ = writeln!(
            s,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            fmt(a.x),
            fmt(a.y),
            fmt(b.x),
            fmt(b.y)
        );
    };
    for a_end in [pts.a0, pts.a1] {
        line(&mut s, "ray", pts.h, a_end);
        line(&mut s, "ray", a_end, grazing_point(pts.p, a_end));
        line(&mut s, "virtual", pts.p, a_end);
    }
    for c_end in [pts.c1, pts.c2] {
        let b_end = b_partner(sol, c_end);
        line(&mut s, "ray", pts.h, c_end);
        line(&mut s, "ray", c_end, b_end);
        line(&mut s, "ray", b_end, grazing_point(pts.q, b_end));
        line(&mut s, "virtual", pts.q, b_end);
    }

    for (id, a, b) in [("mirror-a", pts.a0, pts.a1), ("mirror-b", pts.b0, pts.b1), ("mirror-c", pts.c1, pts.c2)] {
        let _ = writeln!(
            s,
            r#"<path class="{MIRROR_CLASS}" id="{id}" d="M {} {} L {} {}"/>"#,
            fmt(a.x),
            fmt(a.y),
            fmt(b.x),
            fmt(b.y)
        );
    }
    let _ = writeln!(s, r#"<circle class="camera" id="camera-h" cx="{}" cy="{}" r="4"/>"#, fmt(pts.h.x), fmt(pts.h.y));
    for (id, p) in [("camera-p", pts.p), ("camera-q", pts.q)] {
        let _ = writeln!(s, r#"<circle class="vcam" id="{id}" cx="{}" cy="{}" r="4"/>"#, fmt(p.x), fmt(p.y));
    }
    s.push_str("</g>\n");

    // labels sit outside the flipped group so the text reads upright
    for (label, p) in [("H", pts.h), ("P", pts.p), ("Q", pts.q), ("A", pts.a), ("B", pts.b), ("C", pts.c)] {
        let _ = writeln!(s, r#"<text class="label" x="{}" y="{}">{label}</text>"#, fmt(p.x + 6.0), fmt(-p.y - 6.0));
    }
    let (bx, by) = (min_x + 8.0, -min_y - 8.0);
    let _ = writeln!(
        s,
        r#"<g id="scale-bar"><line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1.5"/><text x="{}" y="{}">{} mm</text></g>"#,
        fmt(bx),
        fmt(by),
        fmt(bx + SCALE_BAR_MM),
        fmt(by),
        fmt(bx),
        fmt(by - 4.0),
        SCALE_BAR_MM
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}">f1={:.3} f2={:.3} f3={:.3} mm, beta={:.2} deg{}</text>"#,
        fmt(min_x + 8.0),
        fmt(-max_y + 12.0),
        sol.f[0],
        sol.f[1],
        sol.f[2],
        sol.beta_deg,
        if sol.feasible { "" } else { " (infeasible)" }
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{evaluate_design, DesignVector};

    #[test]
    fn number_format() {
        assert_eq!(fmt(1.0), "1");
        assert_eq!(fmt(-0.00001), "0");
        assert_eq!(fmt(12.345678), "12.3457");
        assert_eq!(fmt(-3.5), "-3.5");
    }

    #[test]
    fn content_contract() {
        let scene = SceneConfig::default();
        let sol = evaluate_design(&scene, &DesignVector::from_degrees(187.879, 255.392, 181.091, 149.679)).unwrap();
        let svg = render_svg(&scene, &sol);
        assert_eq!(svg.matches(r#"class="mirror""#).count(), 3);
        assert!(svg.contains(">H</text>"));
        assert!(svg.contains("scale(1,-1)"));
        assert!(svg.contains(&format!(r#"d="M {} {} L"#, fmt(sol.points.a0.x), fmt(sol.points.a0.y))));
    }

    #[test]
    fn ray_pairs_are_collinear_with_r() {
        let scene = SceneConfig::default();
        let sol = evaluate_design(&scene, &DesignVector::from_degrees(187.879, 255.392, 181.091, 149.679)).unwrap();
        let pts = sol.points;
        for c in [pts.c1, pts.c2] {
            let b = b_partner(&sol, c);
            assert!((b - pts.r).cross(c - pts.r).abs() / (b - pts.r).norm() < 1e-6);
        }
        let t = grazing_point(pts.p, pts.a0);
        assert!((t.norm() - scene.r).abs() < 1e-6);
    }
}
