//! Moebius and anti-Moebius maps of the Riemann sphere, and their Poincare
//! extension to upper half-space.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ALGEBRAIC_TOL;

pub type C64 = Complex64;

/// A point of the extended complex plane. Infinity is a tag, never a big float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedComplex {
    Finite(C64),
    Infinity,
}

impl ExtendedComplex {
    pub fn new(re: f64, im: f64) -> Self {
        ExtendedComplex::Finite(C64::new(re, im))
    }

    pub fn real(re: f64) -> Self {
        ExtendedComplex::Finite(C64::new(re, 0.0))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedComplex::Infinity)
    }

    pub fn finite(&self) -> Option<C64> {
        match *self {
            ExtendedComplex::Finite(z) => Some(z),
            ExtendedComplex::Infinity => None,
        }
    }

    /// Stereographic image on the unit sphere, projecting from the north pole.
    pub fn to_sphere(&self) -> [f64; 3] {
        match *self {
            ExtendedComplex::Infinity => [0.0, 0.0, 1.0],
            ExtendedComplex::Finite(z) => {
                let n2 = z.norm_sqr();
                if !n2.is_finite() {
                    return [0.0, 0.0, 1.0];
                }
                let s = 1.0 + n2;
                [2.0 * z.re / s, 2.0 * z.im / s, (n2 - 1.0) / s]
            }
        }
    }

    pub fn from_sphere(v: [f64; 3]) -> Self {
        let w = C64::new(v[0], v[1]);
        if v[2] <= 0.0 {
            return ExtendedComplex::Finite(w / (1.0 - v[2]));
        }
        // (x + iy) / (1 - z) = (1 + z) / (x - iy) on the sphere; stable near the pole.
        if w.norm() <= 1e-15 {
            ExtendedComplex::Infinity
        } else {
            ExtendedComplex::Finite((1.0 + v[2]) / w.conj())
        }
    }

    /// Chordal distance on the unit sphere (diameter 2).
    pub fn chordal_distance(&self, other: &ExtendedComplex) -> f64 {
        match (*self, *other) {
            (ExtendedComplex::Infinity, ExtendedComplex::Infinity) => 0.0,
            (ExtendedComplex::Finite(z), ExtendedComplex::Infinity)
            | (ExtendedComplex::Infinity, ExtendedComplex::Finite(z)) => {
                2.0 / (1.0 + z.norm_sqr()).sqrt()
            }
            (ExtendedComplex::Finite(z), ExtendedComplex::Finite(w)) => {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
            }
        }
    }

    pub fn conj(&self) -> Self {
        match *self {
            ExtendedComplex::Finite(z) => ExtendedComplex::Finite(z.conj()),
            ExtendedComplex::Infinity => ExtendedComplex::Infinity,
        }
    }
}

impl From<C64> for ExtendedComplex {
    fn from(z: C64) -> Self {
        ExtendedComplex::Finite(z)
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedComplex::Infinity => write!(f, "inf"),
            ExtendedComplex::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

impl Serialize for ExtendedComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedComplex::Infinity => serializer.serialize_str("inf"),
            ExtendedComplex::Finite(z) => [z.re, z.im].serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PointVisitor;

        impl<'de> Visitor<'de> for PointVisitor {
            type Value = ExtendedComplex;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("\"inf\" or a [re, im] pair")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                if v == "inf" {
                    Ok(ExtendedComplex::Infinity)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }

            fn visit_seq<A: de::SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let re: f64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let im: f64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if !(re.is_finite() && im.is_finite()) {
                    return Err(de::Error::custom("point coordinates must be finite"));
                }
                Ok(ExtendedComplex::new(re, im))
            }
        }

        deserializer.deserialize_any(PointVisitor)
    }
}

/// A point (z, t) of upper half-space, t > 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicPoint {
    #[serde(with = "complex_pair")]
    pub z: C64,
    pub t: f64,
}

impl HyperbolicPoint {
    pub fn new(z: C64, t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite() && z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(format!("height must be positive and finite, got {t}")));
        }
        Ok(HyperbolicPoint { z, t })
    }

    /// Unchecked constructor for internal use where t > 0 holds by construction.
    pub(crate) fn raw(z: C64, t: f64) -> Self {
        HyperbolicPoint { z, t }
    }

    pub fn origin() -> Self {
        HyperbolicPoint { z: C64::new(0.0, 0.0), t: 1.0 }
    }
}

pub(crate) mod complex_pair {
    use super::C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(C64::new(re, im))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

/// An element of PSL2(C), optionally precomposed with complex conjugation.
///
/// The matrix always has determinant 1 and a canonical overall sign: the first
/// nonzero entry among a, b, c, d has argument in [0, pi).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoebiusMap {
    a: C64,
    b: C64,
    c: C64,
    d: C64,
    conj: bool,
}

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

impl MoebiusMap {
    pub const IDENTITY: MoebiusMap = MoebiusMap { a: ONE, b: ZERO, c: ZERO, d: ONE, conj: false };

    pub fn new(a: C64, b: C64, c: C64, d: C64, conj: bool) -> Result<Self> {
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if !(scale.is_finite() && det.is_finite()) || det.norm() <= 1e-24 * scale * scale {
            return Err(Error::Domain("singular matrix".into()));
        }
        // Already normalized up to rounding: keep the entries bit for bit.
        if (det - ONE).norm() <= 1e-12 * scale.max(1.0).powi(2) {
            return Ok(Self::canonical(a, b, c, d, conj));
        }
        let s = det.sqrt();
        Ok(Self::canonical(a / s, b / s, c / s, d / s, conj))
    }

    pub fn holomorphic(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        Self::new(a, b, c, d, false)
    }

    fn canonical(a: C64, b: C64, c: C64, d: C64, conj: bool) -> Self {
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        let lead = [a, b, c, d]
            .into_iter()
            .find(|x| x.norm() > 1e-12 * scale)
            .unwrap_or(ONE);
        let upper = lead.im > 0.0 || (lead.im == 0.0 && lead.re > 0.0);
        if upper {
            MoebiusMap { a, b, c, d, conj }
        } else {
            MoebiusMap { a: -a, b: -b, c: -c, d: -d, conj }
        }
    }

    /// The unipotent translation z -> z + t.
    pub fn translation(t: C64) -> Self {
        MoebiusMap { a: ONE, b: t, c: ZERO, d: ONE, conj: false }
    }

    /// u_t = (1 t; 0 1) for real t.
    pub fn unipotent(t: f64) -> Self {
        Self::translation(C64::new(t, 0.0))
    }

    /// a_t = diag(e^{t/2}, e^{-t/2}), acting as z -> e^t z.
    pub fn diagonal(t: f64) -> Self {
        let h = (t / 2.0).exp();
        MoebiusMap { a: C64::new(h, 0.0), b: ZERO, c: ZERO, d: C64::new(1.0 / h, 0.0), conj: false }
    }

    /// z -> lambda z + mu.
    pub fn affine(lambda: C64, mu: C64) -> Result<Self> {
        Self::holomorphic(lambda, mu, ZERO, ONE)
    }

    /// Complex conjugation z -> conj(z).
    pub fn conjugation() -> Self {
        MoebiusMap { conj: true, ..Self::IDENTITY }
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_anti(&self) -> bool {
        self.conj
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    pub fn determinant(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    /// self ∘ other.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        let [a2, b2, c2, d2] = if self.conj {
            [other.a.conj(), other.b.conj(), other.c.conj(), other.d.conj()]
        } else {
            other.entries()
        };
        let a = self.a * a2 + self.b * c2;
        let b = self.a * b2 + self.b * d2;
        let c = self.c * a2 + self.d * c2;
        let d = self.c * b2 + self.d * d2;
        let det = a * d - b * c;
        let s = det.sqrt();
        Self::canonical(a / s, b / s, c / s, d / s, self.conj ^ other.conj)
    }

    pub fn inverse(&self) -> MoebiusMap {
        if self.conj {
            Self::canonical(self.d.conj(), -self.b.conj(), -self.c.conj(), self.a.conj(), true)
        } else {
            Self::canonical(self.d, -self.b, -self.c, self.a, false)
        }
    }

    /// g ∘ self ∘ g⁻¹.
    pub fn conjugate_by(&self, g: &MoebiusMap) -> MoebiusMap {
        g.compose(self).compose(&g.inverse())
    }

    pub fn apply(&self, p: ExtendedComplex) -> ExtendedComplex {
        let p = if self.conj { p.conj() } else { p };
        match p {
            ExtendedComplex::Infinity => {
                if self.c.norm() <= 1e-300 {
                    ExtendedComplex::Infinity
                } else {
                    ExtendedComplex::Finite(self.a / self.c)
                }
            }
            ExtendedComplex::Finite(z) => {
                let num = self.a * z + self.b;
                let den = self.c * z + self.d;
                let scale = self.c.norm() * z.norm() + self.d.norm();
                if den.norm() <= 1e-15 * scale {
                    ExtendedComplex::Infinity
                } else {
                    ExtendedComplex::Finite(num / den)
                }
            }
        }
    }

    pub fn apply_finite(&self, z: C64) -> ExtendedComplex {
        self.apply(ExtendedComplex::Finite(z))
    }

    /// Poincare extension to upper half-space.
    pub fn apply_halfspace(&self, p: HyperbolicPoint) -> HyperbolicPoint {
        let z = if self.conj { p.z.conj() } else { p.z };
        let t2 = p.t * p.t;
        let cz_d = self.c * z + self.d;
        let denom = cz_d.norm_sqr() + self.c.norm_sqr() * t2;
        let num = (self.a * z + self.b) * cz_d.conj() + self.a * self.c.conj() * t2;
        HyperbolicPoint::raw(num / denom, p.t / denom)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        !self.conj
            && self.b.norm() <= tol
            && self.c.norm() <= tol
            && (self.a - self.d).norm() <= tol
    }

    /// Equality as maps up to the global sign of the matrix.
    pub fn approx_eq(&self, other: &MoebiusMap, tol: f64) -> bool {
        if self.conj != other.conj {
            return false;
        }
        let x = self.entries();
        let y = other.entries();
        let same = x.iter().zip(&y).all(|(p, q)| (p - q).norm() <= tol);
        same || x.iter().zip(&y).all(|(p, q)| (p + q).norm() <= tol)
    }

    pub fn classify(&self) -> Result<Classification> {
        if self.conj {
            return Err(Error::Domain("classification defined for holomorphic maps only".into()));
        }
        if self.is_identity(ALGEBRAIC_TOL) {
            return Ok(Classification::Identity);
        }
        let tr2 = self.trace() * self.trace();
        let tol = ALGEBRAIC_TOL * (1.0 + tr2.norm());
        if (tr2 - 4.0).norm() <= tol {
            Ok(Classification::Parabolic)
        } else if tr2.im.abs() <= tol && tr2.re >= 0.0 && tr2.re < 4.0 {
            Ok(Classification::Elliptic)
        } else {
            Ok(Classification::Loxodromic)
        }
    }

    /// Fixed points on the sphere: one for parabolic maps, two otherwise.
    pub fn fixed_points(&self) -> Result<Vec<ExtendedComplex>> {
        let class = self.classify()?;
        if class == Classification::Identity {
            return Err(Error::Domain("all points fixed".into()));
        }
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if c.norm() <= ALGEBRAIC_TOL * scale {
            // z -> (a z + b) / d fixes infinity.
            if class == Classification::Parabolic {
                return Ok(vec![ExtendedComplex::Infinity]);
            }
            return Ok(vec![ExtendedComplex::Finite(b / (d - a)), ExtendedComplex::Infinity]);
        }
        // c z^2 + (d - a) z - b = 0, discriminant tr^2 - 4.
        let amd = a - d;
        if class == Classification::Parabolic {
            return Ok(vec![ExtendedComplex::Finite(amd / (2.0 * c))]);
        }
        let root = (self.trace() * self.trace() - 4.0).sqrt();
        // Pick the cancellation-free root first, recover the second by Vieta.
        let q = if (amd + root).norm() >= (amd - root).norm() { amd + root } else { amd - root };
        let z1 = q / (2.0 * c);
        let z2 = if q.norm() > 0.0 { -2.0 * b / q } else { (amd - root) / (2.0 * c) };
        Ok(vec![ExtendedComplex::Finite(z1), ExtendedComplex::Finite(z2)])
    }

    /// A holomorphic map with p -> 0 and q -> infinity.
    pub fn sending_to_zero_infinity(p: ExtendedComplex, q: ExtendedComplex) -> Result<Self> {
        match (p, q) {
            (ExtendedComplex::Infinity, ExtendedComplex::Infinity) => {
                Err(Error::Domain("endpoints coincide".into()))
            }
            (ExtendedComplex::Finite(p), ExtendedComplex::Infinity) => Ok(Self::translation(-p)),
            (ExtendedComplex::Infinity, ExtendedComplex::Finite(q)) => {
                Self::holomorphic(ZERO, ONE, ONE, -q)
            }
            (ExtendedComplex::Finite(p), ExtendedComplex::Finite(q)) => {
                Self::holomorphic(ONE, -p, ONE, -q)
            }
        }
    }

    /// The holomorphic map with p -> 0, q -> 1, r -> infinity.
    pub fn three_point(p: ExtendedComplex, q: ExtendedComplex, r: ExtendedComplex) -> Result<Self> {
        let g = Self::sending_to_zero_infinity(p, r)?;
        match g.apply(q) {
            ExtendedComplex::Finite(w) if w.norm() > 0.0 => {
                let scale = Self::holomorphic(ONE, ZERO, ZERO, w)?;
                Ok(scale.compose(&g))
            }
            _ => Err(Error::Domain("three points must be distinct".into())),
        }
    }
}

impl Mul for MoebiusMap {
    type Output = MoebiusMap;

    fn mul(self, rhs: MoebiusMap) -> MoebiusMap {
        self.compose(&rhs)
    }
}

impl Serialize for MoebiusMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MapRepr {
            a: [self.a.re, self.a.im],
            b: [self.b.re, self.b.im],
            c: [self.c.re, self.c.im],
            d: [self.d.re, self.d.im],
            conj: self.conj,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MoebiusMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = MapRepr::deserialize(deserializer)?;
        let z = |p: [f64; 2]| C64::new(p[0], p[1]);
        MoebiusMap::new(z(r.a), z(r.b), z(r.c), z(r.d), r.conj).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    a: [f64; 2],
    b: [f64; 2],
    c: [f64; 2],
    d: [f64; 2],
    #[serde(default)]
    conj: bool,
}

pub fn compose(f: &MoebiusMap, g: &MoebiusMap) -> MoebiusMap {
    f.compose(g)
}

pub fn apply_boundary(f: &MoebiusMap, p: ExtendedComplex) -> ExtendedComplex {
    f.apply(p)
}

pub fn apply_halfspace(f: &MoebiusMap, p: HyperbolicPoint) -> HyperbolicPoint {
    f.apply_halfspace(p)
}

pub fn classify(f: &MoebiusMap) -> Result<Classification> {
    f.classify()
}

pub fn fixed_points(f: &MoebiusMap) -> Result<Vec<ExtendedComplex>> {
    f.fixed_points()
}

/// Identity for infinity, otherwise z -> -1/(z - sigma).
pub fn to_infinity_coords(sigma: ExtendedComplex) -> MoebiusMap {
    match sigma {
        ExtendedComplex::Infinity => MoebiusMap::IDENTITY,
        ExtendedComplex::Finite(s) => MoebiusMap::canonical(ZERO, -ONE, ONE, -s, false),
    }
}
