//! Plane-model SVG output: packing disks solid, dual circles dashed.

use std::fmt::Write;

use crate::circlespace::GeneralizedCircle;
use crate::moebius::C64;
use crate::orbits::OrbitRecord;
use crate::packing::CirclePacking;

/// Circles larger than this do not take part in fitting the view box.
const FIT_RADIUS_CAP: f64 = 1e3;
const PIXELS: f64 = 800.0;

/// View box [x0, y0, x1, y1] in plane coordinates.
pub type ViewBox = [f64; 4];

fn fit(circles: &[&GeneralizedCircle]) -> ViewBox {
    let mut bb = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for c in circles {
        if let Some((z, r)) = c.center_radius() {
            if r < FIT_RADIUS_CAP {
                bb = [bb[0].min(z.re - r), bb[1].min(z.im - r), bb[2].max(z.re + r), bb[3].max(z.im + r)];
            }
        }
    }
    if !bb[0].is_finite() {
        return [-2.0, -2.0, 2.0, 2.0];
    }
    let pad = 0.05 * (bb[2] - bb[0]).max(bb[3] - bb[1]).max(1e-9);
    [bb[0] - pad, bb[1] - pad, bb[2] + pad, bb[3] + pad]
}

/// The segment of a line inside the view box.
fn clip_line(c: &GeneralizedCircle, view: &ViewBox) -> Option<(C64, C64)> {
    // Line 2 Re(conj(B) z) + C = 0: normal B, point -C B / (2 |B|^2).
    let n = c.b;
    let p0 = -c.c * n / (2.0 * n.norm_sqr());
    let dir = C64::new(-n.im, n.re) / n.norm();
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (p, d, min, max) in [(p0.re, dir.re, view[0], view[2]), (p0.im, dir.im, view[1], view[3])] {
        if d.abs() < 1e-15 {
            if p < min || p > max {
                return None;
            }
            continue;
        }
        let (a, b) = ((min - p) / d, (max - p) / d);
        lo = lo.max(a.min(b));
        hi = hi.min(a.max(b));
    }
    (lo < hi).then(|| (p0 + dir * lo, p0 + dir * hi))
}

fn shape(out: &mut String, c: &GeneralizedCircle, view: &ViewBox, extra: &str) {
    if let Some((z, r)) = c.center_radius() {
        let _ = writeln!(out, r#"<circle cx="{:.9}" cy="{:.9}" r="{:.9}"{extra}/>"#, z.re, -z.im, r);
    } else if let Some((a, b)) = clip_line(c, view) {
        let _ = writeln!(out, r#"<line x1="{:.9}" y1="{:.9}" x2="{:.9}" y2="{:.9}"{extra}/>"#, a.re, -a.im, b.re, -b.im);
    }
}

/// SVG with `solid` circles drawn plain and `dashed` circles dashed; the
/// view box is fitted to all of them unless given.
pub fn render(solid: &[GeneralizedCircle], dashed: &[GeneralizedCircle], view: Option<ViewBox>) -> String {
    let all: Vec<&GeneralizedCircle> = solid.iter().chain(dashed).collect();
    let view = view.unwrap_or_else(|| fit(&all));
    let (w, h) = (view[2] - view[0], view[3] - view[1]);
    let stroke = 0.002 * w.max(h);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="{} {} {} {}">"#,
        PIXELS,
        PIXELS * h / w,
        view[0],
        -view[3],
        w,
        h
    );
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="{stroke}">"#);
    for c in solid {
        shape(&mut out, c, &view, "");
    }
    let dash = format!(r#" stroke-dasharray="{} {}" stroke="gray""#, 4.0 * stroke, 3.0 * stroke);
    for c in dashed {
        shape(&mut out, c, &view, &dash);
    }
    out.push_str("</g>\n</svg>\n");
    out
}

pub fn render_packing(packing: &CirclePacking) -> String {
    let solid: Vec<GeneralizedCircle> = packing.disks.iter().map(|d| d.disk.circle).collect();
    render(&solid, &packing.spec.duals, None)
}

/// Orbit circles dashed over an optional packing.
pub fn render_orbit(orbit: &OrbitRecord, packing: Option<&CirclePacking>) -> String {
    let solid: Vec<GeneralizedCircle> =
        packing.map(|p| p.disks.iter().map(|d| d.disk.circle).collect()).unwrap_or_default();
    let dashed: Vec<GeneralizedCircle> = orbit.entries.iter().map(|e| e.circle).collect();
    render(&solid, &dashed, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_are_clipped_to_the_view() {
        let view = [-1.0, -1.0, 1.0, 1.0];
        let (a, b) = clip_line(&GeneralizedCircle::real_line(), &view).unwrap();
        assert!((a.re.abs() - 1.0).abs() < 1e-12 && (b.re.abs() - 1.0).abs() < 1e-12);
        assert!(clip_line(&GeneralizedCircle::horizontal_line(3.0), &view).is_none());
    }

    #[test]
    fn dashed_circles_are_marked() {
        let svg = render(&[GeneralizedCircle::unit_circle()], &[GeneralizedCircle::real_line()], None);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
        assert!(svg.contains("<line"));
    }
}
