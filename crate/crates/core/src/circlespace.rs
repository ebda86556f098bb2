//! Circles on the Riemann sphere in Hermitian form, their spherical
//! parametrization, and the Moebius action on them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moebius::{complex_pair, ExtendedComplex, MoebiusMap, C64};
use crate::{ALGEBRAIC_TOL, CIRCLE_EQ_TOL};

pub type Vec3 = [f64; 3];

/// Caps whose boundary is this close to tangent, as a cosine ratio, count as missing.
const TANGENT_SLACK: f64 = 1e-12;

pub(crate) fn dot(u: Vec3, v: Vec3) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub(crate) fn cross(u: Vec3, v: Vec3) -> Vec3 {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

pub(crate) fn norm(u: Vec3) -> f64 {
    dot(u, u).sqrt()
}

pub(crate) fn scale(u: Vec3, s: f64) -> Vec3 {
    [u[0] * s, u[1] * s, u[2] * s]
}

pub(crate) fn add(u: Vec3, v: Vec3) -> Vec3 {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

pub(crate) fn normalize(u: Vec3) -> Vec3 {
    scale(u, 1.0 / norm(u))
}

/// Great-circle distance between unit vectors.
pub fn sphere_distance(u: Vec3, v: Vec3) -> f64 {
    norm(cross(u, v)).atan2(dot(u, v))
}

/// An oriented circle {A|z|^2 + 2 Re(conj(B) z) + C = 0}, scaled so that
/// |B|^2 - AC = 1. The sign is kept: the open disk {Q > 0} is the disk the
/// orientation selects. Equality of circles ignores the sign.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CircleRepr", into = "CircleRepr")]
pub struct GeneralizedCircle {
    pub a: f64,
    pub b: C64,
    pub c: f64,
}

#[derive(Serialize, Deserialize)]
struct CircleRepr {
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B", with = "complex_pair")]
    b: C64,
    #[serde(rename = "C")]
    c: f64,
}

impl TryFrom<CircleRepr> for GeneralizedCircle {
    type Error = Error;

    fn try_from(r: CircleRepr) -> Result<Self> {
        GeneralizedCircle::new(r.a, r.b, r.c)
    }
}

impl From<GeneralizedCircle> for CircleRepr {
    fn from(c: GeneralizedCircle) -> Self {
        CircleRepr { a: c.a, b: c.b, c: c.c }
    }
}

impl GeneralizedCircle {
    /// Rescales by a positive factor to unit discriminant.
    pub fn new(a: f64, b: C64, c: f64) -> Result<Self> {
        let disc = b.norm_sqr() - a * c;
        if !(disc > 0.0 && disc.is_finite()) {
            return Err(Error::Domain(format!("not a real circle: |B|^2 - AC = {disc}")));
        }
        // Already normalized up to rounding: keep the coefficients bit for bit.
        if (disc - 1.0).abs() <= 1e-12 * b.norm_sqr().max((a * c).abs()).max(1.0) {
            return Ok(GeneralizedCircle { a, b, c });
        }
        let s = 1.0 / disc.sqrt();
        Ok(GeneralizedCircle { a: a * s, b: b * s, c: c * s })
    }

    /// Euclidean circle, oriented so that {Q > 0} is the outside.
    pub fn circle(center: C64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Domain(format!("radius must be positive, got {radius}")));
        }
        Self::new(1.0, -center, center.norm_sqr() - radius * radius)
    }

    /// The line through `p` with direction `dir`.
    pub fn line(p: C64, dir: C64) -> Result<Self> {
        if dir.norm() == 0.0 {
            return Err(Error::Domain("line direction must be nonzero".into()));
        }
        // normal B = i dir, and Re(conj(B) p) + C/2 = 0.
        let b = C64::new(0.0, 1.0) * dir / dir.norm();
        Self::new(0.0, b, -2.0 * (b.conj() * p).re)
    }

    /// The horizontal line Im z = y, oriented so {Q > 0} is {Im z > y}.
    pub fn horizontal_line(y: f64) -> Self {
        GeneralizedCircle { a: 0.0, b: C64::new(0.0, 1.0), c: -2.0 * y }
    }

    pub fn unit_circle() -> Self {
        GeneralizedCircle { a: 1.0, b: C64::new(0.0, 0.0), c: -1.0 }
    }

    pub fn real_line() -> Self {
        Self::horizontal_line(0.0)
    }

    pub fn reversed(&self) -> Self {
        GeneralizedCircle { a: -self.a, b: -self.b, c: -self.c }
    }

    /// Canonical sign: the first of A, Re B, Im B that is nonzero is positive.
    pub fn canonical(&self) -> Self {
        self.with_sign(self.canonical_sign())
    }

    pub(crate) fn canonical_sign(&self) -> f64 {
        let scale = self.a.abs().max(self.b.norm()).max(self.c.abs());
        let eps = 1e-12 * scale;
        let lead = [self.a, self.b.re, self.b.im].into_iter().find(|x| x.abs() > eps).unwrap_or(1.0);
        if lead > 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    pub(crate) fn with_sign(&self, s: f64) -> Self {
        if s > 0.0 {
            *self
        } else {
            self.reversed()
        }
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.a, self.b.re, self.b.im, self.c]
    }

    /// The Hermitian form Q(z) = A|z|^2 + 2 Re(conj(B) z) + C.
    pub fn eval(&self, z: C64) -> f64 {
        self.a * z.norm_sqr() + 2.0 * (self.b.conj() * z).re + self.c
    }

    pub fn is_line(&self) -> bool {
        self.a.abs() <= ALGEBRAIC_TOL * self.b.norm().max(1.0)
    }

    /// Center and radius when the circle is not a line.
    pub fn center_radius(&self) -> Option<(C64, f64)> {
        if self.a == 0.0 {
            None
        } else {
            Some((-self.b / self.a, 1.0 / self.a.abs()))
        }
    }

    /// Signed curvature of the boundary of the disk {Q > 0}: positive when that
    /// disk is bounded.
    pub fn signed_curvature(&self) -> f64 {
        -self.a
    }

    /// Equality up to sign at the coefficient tolerance.
    pub fn approx_eq(&self, other: &GeneralizedCircle, tol: f64) -> bool {
        let x = self.coefficients();
        let y = other.coefficients();
        x.iter().zip(&y).all(|(p, q)| (p - q).abs() <= tol)
            || x.iter().zip(&y).all(|(p, q)| (p + q).abs() <= tol)
    }

    /// Equality up to sign, each coefficient within CIRCLE_EQ_TOL relative to its size.
    pub fn same_circle(&self, other: &GeneralizedCircle) -> bool {
        let x = self.coefficients();
        let y = other.coefficients();
        let close = |s: f64| x.iter().zip(&y).all(|(p, q)| (p - s * q).abs() <= CIRCLE_EQ_TOL * (1.0 + p.abs().max(q.abs())));
        close(1.0) || close(-1.0)
    }

    /// Inversive product of oriented circles; its absolute value is the cosine
    /// of the intersection angle for crossing circles.
    pub fn inversive_product(&self, other: &GeneralizedCircle) -> f64 {
        (self.b * other.b.conj()).re - 0.5 * (self.a * other.c + other.a * self.c)
    }

    /// Spherical distance from a point to the circle.
    pub fn spherical_residual(&self, p: ExtendedComplex) -> f64 {
        let s = to_spherical(self);
        (sphere_distance(p.to_sphere(), s.center) - s.radius).abs()
    }

    pub fn contains_point(&self, p: ExtendedComplex, tol: f64) -> bool {
        self.spherical_residual(p) <= tol
    }

    /// Sample `n` points equally spaced in the spherical parametrization.
    pub fn sample_points(&self, n: usize) -> Vec<ExtendedComplex> {
        let frame = CircleFrame::new(self);
        (0..n).map(|k| frame.point(2.0 * PI * k as f64 / n as f64)).collect()
    }
}

/// A circle on the unit sphere: center and spherical radius in (0, pi).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalCircle {
    pub center: Vec3,
    pub radius: f64,
}

impl SphericalCircle {
    pub fn new(center: Vec3, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius < PI) {
            return Err(Error::Domain(format!("spherical radius {radius} outside (0, pi)")));
        }
        let n = norm(center);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Domain("center must be a nonzero vector".into()));
        }
        Ok(SphericalCircle { center: scale(center, 1.0 / n), radius })
    }

    /// The other preimage under the double cover.
    pub fn antipodal(&self) -> Self {
        SphericalCircle { center: scale(self.center, -1.0), radius: PI - self.radius }
    }
}

/// Spherical form of the oriented circle; the cap around the center is {Q > 0}.
pub fn to_spherical(circle: &GeneralizedCircle) -> SphericalCircle {
    let (a, b, c) = (circle.a, circle.b, circle.c);
    let n3 = 0.5 * (a - c);
    let s = 1.0 / (b.norm_sqr() + n3 * n3).sqrt();
    let center = normalize([s * b.re, s * b.im, s * n3]);
    let h = -0.5 * s * (a + c);
    SphericalCircle { center, radius: s.atan2(h) }
}

pub fn from_spherical(sc: &SphericalCircle) -> GeneralizedCircle {
    let n = sc.center;
    let (s, h) = sc.radius.sin_cos();
    GeneralizedCircle {
        a: (n[2] - h) / s,
        b: C64::new(n[0] / s, n[1] / s),
        c: -(n[2] + h) / s,
    }
}

/// The double cover S^2 x (0, pi) -> circles.
pub fn covering_phi(x: Vec3, r: f64) -> Result<GeneralizedCircle> {
    Ok(from_spherical(&SphericalCircle::new(x, r)?))
}

/// Angle parametrization of a circle through its spherical form.
#[derive(Clone, Copy, Debug)]
pub struct CircleFrame {
    pub spherical: SphericalCircle,
    e1: Vec3,
    e2: Vec3,
}

impl CircleFrame {
    /// Frame of the canonical orientation, so both signs share a parametrization.
    pub fn new(circle: &GeneralizedCircle) -> Self {
        let spherical = to_spherical(&circle.canonical());
        let n = spherical.center;
        let k = if n[2].abs() < 0.9 { [0.0, 0.0, 1.0] } else { [1.0, 0.0, 0.0] };
        let e1 = normalize(cross(k, n));
        let e2 = cross(n, e1);
        CircleFrame { spherical, e1, e2 }
    }

    pub fn point_on_sphere(&self, theta: f64) -> Vec3 {
        let (s, c) = self.spherical.radius.sin_cos();
        let (st, ct) = theta.sin_cos();
        add(scale(self.spherical.center, c), add(scale(self.e1, s * ct), scale(self.e2, s * st)))
    }

    pub fn point(&self, theta: f64) -> ExtendedComplex {
        ExtendedComplex::from_sphere(self.point_on_sphere(theta))
    }

    /// Angle parameter in [0, 2 pi) of the projection of a point onto the circle.
    pub fn angle_of(&self, p: ExtendedComplex) -> f64 {
        let v = p.to_sphere();
        let t = dot(v, self.e2).atan2(dot(v, self.e1));
        if t < 0.0 {
            t + 2.0 * PI
        } else {
            t
        }
    }

    /// Open arc of parameters inside the cap {m . P > cos rho}, as
    /// (center angle, half width); `None` when empty, half width pi when full.
    /// Caps tangent to the circle from either side meet it in no open arc.
    pub fn cap_arc(&self, cap: &SphericalCircle) -> Option<(f64, f64)> {
        let (s, c) = self.spherical.radius.sin_cos();
        let m = cap.center;
        let alpha = c * dot(m, self.spherical.center);
        let p = s * dot(m, self.e1);
        let q = s * dot(m, self.e2);
        let beta = p.hypot(q);
        let threshold = cap.radius.cos() - alpha;
        if beta <= 1e-15 {
            return if threshold < 0.0 { Some((0.0, PI)) } else { None };
        }
        let ratio = threshold / beta;
        if ratio >= 1.0 - TANGENT_SLACK {
            None
        } else if ratio <= -1.0 {
            Some((0.0, PI))
        } else {
            let mut center = q.atan2(p);
            if center < 0.0 {
                center += 2.0 * PI;
            }
            Some((center, ratio.acos()))
        }
    }
}

/// The unique circle through three distinct points.
pub fn circle_through(
    p1: ExtendedComplex,
    p2: ExtendedComplex,
    p3: ExtendedComplex,
) -> Result<GeneralizedCircle> {
    let min_sep = p1.chordal_distance(&p2).min(p2.chordal_distance(&p3)).min(p1.chordal_distance(&p3));
    if min_sep <= 1e-10 {
        return Err(Error::DegenerateTriple);
    }
    let (v1, v2, v3) = (p1.to_sphere(), p2.to_sphere(), p3.to_sphere());
    let d2 = [v2[0] - v1[0], v2[1] - v1[1], v2[2] - v1[2]];
    let d3 = [v3[0] - v1[0], v3[1] - v1[1], v3[2] - v1[2]];
    let n = cross(d2, d3);
    let len = norm(n);
    if len <= 1e-300 {
        return Err(Error::DegenerateTriple);
    }
    let n = scale(n, 1.0 / len);
    let h = (dot(n, v1) + dot(n, v2) + dot(n, v3)) / 3.0;
    let radius = h.clamp(-1.0, 1.0).acos();
    Ok(from_spherical(&SphericalCircle { center: n, radius }).canonical())
}

/// Image of an oriented circle; the selected disk maps to the selected disk.
pub fn apply_circle(f: &MoebiusMap, circle: &GeneralizedCircle) -> GeneralizedCircle {
    let b = if f.is_anti() { circle.b.conj() } else { circle.b };
    let (ha, hc) = (C64::new(circle.a, 0.0), C64::new(circle.c, 0.0));
    let [a, bb, c, d] = f.entries();
    // N = M^{-1} for a unimodular M.
    let (n11, n12, n21, n22) = (d, -bb, -c, a);
    let col1 = (ha * n11 + b * n21, b.conj() * n11 + hc * n21);
    let col2 = (ha * n12 + b * n22, b.conj() * n12 + hc * n22);
    let a2 = (n11.conj() * col1.0 + n21.conj() * col1.1).re;
    let b2 = n11.conj() * col2.0 + n21.conj() * col2.1;
    let c2 = (n12.conj() * col2.0 + n22.conj() * col2.1).re;
    let disc = b2.norm_sqr() - a2 * c2;
    let s = 1.0 / disc.sqrt();
    GeneralizedCircle { a: a2 * s, b: b2 * s, c: c2 * s }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Intersection {
    Disjoint,
    Tangent { point: ExtendedComplex },
    Crossing { points: [ExtendedComplex; 2] },
    Equal,
}

/// Classify the intersection; tangency when the inversive product is within
/// `tol` of +-1.
pub fn intersect(c1: &GeneralizedCircle, c2: &GeneralizedCircle, tol: f64) -> Intersection {
    if c1.approx_eq(c2, CIRCLE_EQ_TOL) {
        return Intersection::Equal;
    }
    let prod = c1.inversive_product(c2).abs();
    if prod > 1.0 + tol {
        return Intersection::Disjoint;
    }
    let tangent = (prod - 1.0).abs() <= tol;
    // Parametrize the first circle spherically and solve for the crossings.
    let frame = CircleFrame::new(c1);
    let cap = to_spherical(c2);
    let (sr, cr) = frame.spherical.radius.sin_cos();
    let m = cap.center;
    let alpha = cr * dot(m, frame.spherical.center);
    let p = sr * dot(m, frame.e1);
    let q = sr * dot(m, frame.e2);
    let beta = p.hypot(q);
    let center = q.atan2(p);
    let ratio = if beta > 0.0 { ((cap.radius.cos() - alpha) / beta).clamp(-1.0, 1.0) } else { 1.0 };
    if tangent {
        let theta = if ratio >= 0.0 { center } else { center + PI };
        return Intersection::Tangent { point: frame.point(theta) };
    }
    let half = ratio.acos();
    Intersection::Crossing { points: [frame.point(center - half), frame.point(center + half)] }
}

/// Unoriented intersection angle in [0, pi/2]; tangent circles give 0.
pub fn angle_between(c1: &GeneralizedCircle, c2: &GeneralizedCircle) -> Result<f64> {
    let prod = c1.inversive_product(c2).abs();
    if prod > 1.0 + ALGEBRAIC_TOL {
        return Err(Error::NoIntersection);
    }
    Ok(prod.min(1.0).acos())
}

/// Whether every point of `d` lies at spherical distance in (r - eps, r + eps)
/// from the center of the cap of `c`.
pub fn annulus_contains(d: &GeneralizedCircle, c: &GeneralizedCircle, eps: f64) -> Result<bool> {
    let sc = to_spherical(c);
    let limit = sc.radius.min(PI - sc.radius);
    if !(eps > 0.0 && eps < limit) {
        return Err(Error::Domain(format!("epsilon {eps} outside (0, {limit})")));
    }
    let sd = to_spherical(d);
    let delta = sphere_distance(sc.center, sd.center);
    let nearest = (delta - sd.radius).abs();
    let farthest = (delta + sd.radius).min(2.0 * PI - delta - sd.radius);
    Ok(nearest > sc.radius - eps && farthest < sc.radius + eps)
}

/// Quotient metric of S^2 x (0, pi) under the antipodal involution.
pub fn circle_distance(c1: &GeneralizedCircle, c2: &GeneralizedCircle) -> f64 {
    let s1 = to_spherical(c1);
    let s2 = to_spherical(c2);
    let direct = sphere_distance(s1.center, s2.center) + (s1.radius - s2.radius).abs();
    let flipped = sphere_distance(s1.center, scale(s2.center, -1.0))
        + (s1.radius - (PI - s2.radius)).abs();
    direct.min(flipped)
}

/// One of the two complementary open disks of a circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    /// Canonically signed circle.
    pub circle: GeneralizedCircle,
    /// +1 selects {Q > 0} of the canonical circle, -1 selects {Q < 0}.
    pub side: i8,
}

impl Disk {
    /// The disk {Q > 0} of an oriented circle.
    pub fn from_oriented(circle: &GeneralizedCircle) -> Self {
        let s = circle.canonical_sign();
        Disk { circle: circle.with_sign(s), side: if s > 0.0 { 1 } else { -1 } }
    }

    pub fn inside(center: C64, radius: f64) -> Result<Self> {
        Ok(Self::from_oriented(&GeneralizedCircle::circle(center, radius)?.reversed()))
    }

    pub fn outside(center: C64, radius: f64) -> Result<Self> {
        Ok(Self::from_oriented(&GeneralizedCircle::circle(center, radius)?))
    }

    /// {Im z > y}.
    pub fn above(y: f64) -> Self {
        Self::from_oriented(&GeneralizedCircle::horizontal_line(y))
    }

    /// {Im z < y}.
    pub fn below(y: f64) -> Self {
        Self::from_oriented(&GeneralizedCircle::horizontal_line(y).reversed())
    }

    pub fn oriented(&self) -> GeneralizedCircle {
        self.circle.with_sign(self.side as f64)
    }

    pub fn contains(&self, p: ExtendedComplex) -> bool {
        let o = self.oriented();
        match p {
            ExtendedComplex::Finite(z) => o.eval(z) > 0.0,
            ExtendedComplex::Infinity => o.a > 0.0,
        }
    }

    /// Spherical cap of the disk.
    pub fn cap(&self) -> SphericalCircle {
        to_spherical(&self.oriented())
    }

    /// A point inside the disk: the spherical center of its cap.
    pub fn witness(&self) -> ExtendedComplex {
        ExtendedComplex::from_sphere(self.cap().center)
    }

    pub fn image(&self, f: &MoebiusMap) -> Disk {
        Disk::from_oriented(&apply_circle(f, &self.oriented()))
    }

    /// Signed curvature, negative when the disk is the outside of a circle.
    pub fn curvature(&self) -> f64 {
        self.oriented().signed_curvature()
    }

    /// The smaller of the two spherical radii of the boundary circle.
    pub fn spherical_size(&self) -> f64 {
        let r = self.cap().radius;
        r.min(PI - r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(re: f64, im: f64) -> ExtendedComplex {
        ExtendedComplex::new(re, im)
    }

    #[test]
    fn circle_through_examples() {
        let l = circle_through(pt(0.0, 0.0), pt(1.0, 0.0), ExtendedComplex::Infinity).unwrap();
        assert!(l.a.abs() < 1e-12 && l.b.re.abs() < 1e-12);
        let u = circle_through(pt(1.0, 0.0), pt(0.0, 1.0), pt(-1.0, 0.0)).unwrap();
        assert!(u.approx_eq(&GeneralizedCircle::unit_circle(), 1e-12));
        assert!(circle_through(pt(1.0, 0.0), pt(1.0, 0.0), pt(2.0, 0.0)).is_err());
    }

    #[test]
    fn circle_through_matches_linear_solve() {
        // Oracle: solve A|p|^2 + 2(Bx x + By y) + C = 0 with A fixed to 1 by Cramer's rule.
        let pts = [(0.0, 0.0), (2.0, 0.0), (1.0, 1.0)];
        let m: Vec<[f64; 3]> = pts.iter().map(|&(x, y)| [2.0 * x, 2.0 * y, 1.0]).collect();
        let rhs: Vec<f64> = pts.iter().map(|&(x, y)| -(x * x + y * y)).collect();
        let det3 = |m: &[[f64; 3]]| {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        let d = det3(&m);
        let solve = |k: usize| {
            let mut mk = m.clone();
            for (row, r) in mk.iter_mut().zip(&rhs) {
                row[k] = *r;
            }
            det3(&mk) / d
        };
        let (bx, by, c) = (solve(0), solve(1), solve(2));
        let oracle = GeneralizedCircle::new(1.0, C64::new(bx, by), c).unwrap();
        let got = circle_through(pt(0.0, 0.0), pt(2.0, 0.0), pt(1.0, 1.0)).unwrap();
        assert!(got.approx_eq(&oracle, 1e-12));
        let (center, radius) = got.center_radius().unwrap();
        assert!((center - C64::new(1.0, 0.0)).norm() < 1e-12 && (radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn action_examples() {
        let u = GeneralizedCircle::unit_circle();
        assert_eq!(apply_circle(&MoebiusMap::IDENTITY, &u), u);
        let shifted = apply_circle(&MoebiusMap::unipotent(1.0), &u);
        let (c, r) = shifted.center_radius().unwrap();
        assert!((c - C64::new(1.0, 0.0)).norm() < 1e-12 && (r - 1.0).abs() < 1e-12);
        let inv = crate::moebius::to_infinity_coords(pt(0.0, 0.0));
        let img = apply_circle(&inv, &GeneralizedCircle::real_line());
        assert!(img.same_circle(&GeneralizedCircle::real_line()));
        for p in [pt(2.0, 0.0), pt(-0.5, 0.0), pt(7.0, 0.0)] {
            assert!(img.contains_point(inv.apply(p), 1e-12));
        }
    }

    #[test]
    fn intersection_examples() {
        let u = GeneralizedCircle::unit_circle();
        match intersect(&u, &GeneralizedCircle::real_line(), 1e-9) {
            Intersection::Crossing { points } => {
                let mut xs: Vec<f64> = points.iter().map(|p| p.finite().unwrap().re).collect();
                xs.sort_by(f64::total_cmp);
                assert!((xs[0] + 1.0).abs() < 1e-12 && (xs[1] - 1.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        match intersect(&u, &GeneralizedCircle::horizontal_line(1.0), 1e-9) {
            Intersection::Tangent { point } => assert!(point.chordal_distance(&pt(0.0, 1.0)) < 1e-9),
            other => panic!("{other:?}"),
        }
        let far = GeneralizedCircle::circle(C64::new(3.0, 0.0), 1.0).unwrap();
        assert_eq!(intersect(&u, &far, 1e-9), Intersection::Disjoint);
        assert_eq!(intersect(&u, &u.reversed(), 1e-9), Intersection::Equal);
    }

    #[test]
    fn angle_examples() {
        let re = GeneralizedCircle::real_line();
        let im = GeneralizedCircle::line(C64::new(0.0, 0.0), C64::new(0.0, 1.0)).unwrap();
        assert!((angle_between(&re, &im).unwrap() - PI / 2.0).abs() < 1e-12);
        assert!((angle_between(&GeneralizedCircle::unit_circle(), &re).unwrap() - PI / 2.0).abs() < 1e-12);
        // Center at height 1, radius 2: the tangent line meets the real axis at
        // angle theta with cos(theta) = h / r.
        let c = GeneralizedCircle::circle(C64::new(0.0, 1.0), 2.0).unwrap();
        assert!((angle_between(&c, &re).unwrap() - PI / 3.0).abs() < 1e-12);
        let far = GeneralizedCircle::circle(C64::new(0.0, 5.0), 1.0).unwrap();
        assert!(angle_between(&far, &re).is_err());
    }

    #[test]
    fn spherical_examples() {
        let s = to_spherical(&GeneralizedCircle::real_line());
        assert!((s.radius - PI / 2.0).abs() < 1e-12);
        assert!(s.center[2].abs() < 1e-12);
        let e = to_spherical(&GeneralizedCircle::unit_circle());
        assert!((e.radius - PI / 2.0).abs() < 1e-12 && (e.center[2] - 1.0).abs() < 1e-12);
        // |z| = 3: fit the plane through three projected points.
        let three = GeneralizedCircle::circle(C64::new(0.0, 0.0), 3.0).unwrap();
        let sc = to_spherical(&three);
        let heights: Vec<f64> = [pt(3.0, 0.0), pt(0.0, 3.0), pt(-3.0, 0.0)]
            .iter()
            .map(|p| dot(p.to_sphere(), sc.center))
            .collect();
        for h in heights {
            assert!((h - sc.radius.cos()).abs() < 1e-12);
        }
        assert!((sc.radius - (0.6f64).atan2(0.8)).abs() < 1e-12);
        let eq = covering_phi([0.0, 0.0, 1.0], PI / 2.0).unwrap();
        assert!(eq.same_circle(&GeneralizedCircle::unit_circle()));
        assert!(covering_phi([0.0, 0.0, 1.0], PI).is_err());
    }

    #[test]
    fn annulus_examples() {
        let c = GeneralizedCircle::circle(C64::new(0.2, 0.1), 0.7).unwrap();
        let sc = to_spherical(&c);
        assert!(annulus_contains(&c, &c, 0.1).unwrap());
        let wider = from_spherical(&SphericalCircle { radius: sc.radius + 0.05, ..sc });
        assert!(annulus_contains(&wider, &c, 0.1).unwrap());
        assert!(!annulus_contains(&wider, &c, 0.04).unwrap());
        assert!(annulus_contains(&c, &c, 10.0).is_err());
        // The other disk of c gives the same decision.
        assert_eq!(
            annulus_contains(&wider, &c.reversed(), 0.1).unwrap(),
            annulus_contains(&wider, &c, 0.1).unwrap()
        );
    }

    #[test]
    fn distance_examples() {
        let c = GeneralizedCircle::circle(C64::new(0.0, 0.0), 2.0).unwrap();
        assert!(circle_distance(&c, &c.reversed()) < 1e-12);
        let sc = to_spherical(&c);
        let d = from_spherical(&SphericalCircle { radius: sc.radius + 1e-3, ..sc });
        assert!((circle_distance(&c, &d) - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn disks() {
        let d = Disk::inside(C64::new(0.5, 0.0), 0.5).unwrap();
        assert!(d.contains(pt(0.5, 0.1)) && !d.contains(pt(2.0, 0.0)));
        assert!((d.curvature() - 2.0).abs() < 1e-12);
        assert!(d.contains(d.witness()));
        let o = Disk::outside(C64::new(0.0, 0.0), 1.0).unwrap();
        assert!((o.curvature() + 1.0).abs() < 1e-12 && o.contains(ExtendedComplex::Infinity));
        assert!(Disk::above(1.0).contains(pt(0.0, 2.0)) && Disk::below(-1.0).contains(pt(3.0, -2.0)));
        let json = serde_json::to_string(&d).unwrap();
        let back: Disk = serde_json::from_str(&json).unwrap();
        assert!(back.oriented().approx_eq(&d.oriented(), 1e-15) && back.side == d.side);
    }
}
