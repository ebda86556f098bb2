//! Built-in configurations: the Apollonian packing from the (-1, 2, 2, 3)
//! quadruple and its dual circles, and a strip packing between two
//! horocycle lines tangent at infinity.

use crate::circlespace::{apply_circle, circle_through, Disk, GeneralizedCircle};
use crate::error::{Error, Result};
use crate::moebius::{ExtendedComplex, MoebiusMap, C64};
use crate::packing::{inversion_in_circle, PackingSpec};
use crate::recurrence::{FrameSpec, Quadruple};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn pt(re: f64, im: f64) -> ExtendedComplex {
    ExtendedComplex::new(re, im)
}

/// Outer disk |z| > 1, disks of radius 1/2 at ±1/2 and of radius 1/3 at 2i/3.
pub fn apollonian_seed() -> Vec<Disk> {
    vec![
        Disk::outside(c(0.0, 0.0), 1.0).unwrap(),
        Disk::inside(c(0.5, 0.0), 0.5).unwrap(),
        Disk::inside(c(-0.5, 0.0), 0.5).unwrap(),
        Disk::inside(c(0.0, 2.0 / 3.0), 1.0 / 3.0).unwrap(),
    ]
}

/// Tangency points of the seed disks, keyed by the pair of seed indices.
pub fn apollonian_seed_tangencies() -> Vec<([usize; 2], ExtendedComplex)> {
    vec![
        ([0, 1], pt(1.0, 0.0)),
        ([0, 2], pt(-1.0, 0.0)),
        ([0, 3], pt(0.0, 1.0)),
        ([1, 2], pt(0.0, 0.0)),
        ([1, 3], pt(0.2, 0.4)),
        ([2, 3], pt(-0.2, 0.4)),
    ]
}

/// The dual circle of each triple of seed disks; dual i misses seed i.
pub fn apollonian_duals() -> Vec<GeneralizedCircle> {
    let tangencies = apollonian_seed_tangencies();
    (0..4)
        .map(|skip| {
            let pts: Vec<ExtendedComplex> =
                tangencies.iter().filter(|(pair, _)| !pair.contains(&skip)).map(|(_, p)| *p).collect();
            circle_through(pts[0], pts[1], pts[2]).expect("seed tangencies are distinct")
        })
        .collect()
}

pub fn apollonian_spec(depth: usize, min_radius: f64) -> PackingSpec {
    let duals = apollonian_duals();
    PackingSpec {
        seed: apollonian_seed().iter().map(Disk::oriented).collect(),
        generators: duals.iter().map(inversion_in_circle).collect(),
        depth,
        min_radius,
        duals,
    }
}

/// Word in the Apollonian generators moving dual 0 to the dual circle
/// fixture. Its three covering disks first appear at generation depth 3.
pub const DUAL_CIRCLE_WORD: [usize; 3] = [1, 2, 3];

pub fn apollonian_word_map(word: &[usize]) -> MoebiusMap {
    let gens = apollonian_spec(0, 1.0).generators;
    word.iter().fold(MoebiusMap::IDENTITY, |m, &l| m.compose(&gens[l]))
}

/// A dual circle meeting the limit set in three tangency points.
pub fn dual_circle() -> GeneralizedCircle {
    apply_circle(&apollonian_word_map(&DUAL_CIRCLE_WORD), &apollonian_duals()[0])
}

/// Tangency points of the seed disks lying on dual 0, moved onto [`dual_circle`].
pub fn dual_circle_points() -> Vec<ExtendedComplex> {
    let g = apollonian_word_map(&DUAL_CIRCLE_WORD);
    apollonian_seed_tangencies()
        .iter()
        .filter(|(pair, _)| !pair.contains(&0))
        .map(|(_, p)| g.apply(*p))
        .collect()
}

/// Frame on the dual circle: forward endpoint at one of its limit points,
/// backward endpoint inside a disk of the packing.
pub fn dual_circle_frame() -> FrameSpec {
    let g = apollonian_word_map(&DUAL_CIRCLE_WORD);
    // i/2 is the top of dual 0, inside the seed disk at 2i/3.
    FrameSpec::new(dual_circle(), g.apply(pt(0.0, 0.5)), dual_circle_points()[0])
        .expect("fixture frame points lie on the circle")
}

/// Translation-invariant packing of the strip |Im z| < 1.
pub mod strip {
    use super::*;

    /// L1 = {Im z < -1}.
    pub fn lower() -> Disk {
        Disk::below(-1.0)
    }

    /// L2 = {Im z > 1}.
    pub fn upper() -> Disk {
        Disk::above(1.0)
    }

    /// Tangency point of the disks at -i/2 and 1 - i/2.
    pub fn lambda0() -> C64 {
        c(0.5, -0.5)
    }

    /// Distance from [`lambda0`] to the lower line.
    pub const A: f64 = 0.5;

    /// Reflection circles: through the cusps over L1, through those under
    /// L2, and the circle through the four cusps around 1/2.
    pub fn mirrors() -> Vec<GeneralizedCircle> {
        vec![
            GeneralizedCircle::circle(c(0.5, -1.0), 0.5).unwrap(),
            GeneralizedCircle::circle(c(0.5, 1.0), 0.5).unwrap(),
            GeneralizedCircle::circle(c(0.5, 0.0), 0.5).unwrap(),
        ]
    }

    pub fn spec(depth: usize, min_radius: f64) -> PackingSpec {
        let mirrors = mirrors();
        let mut generators: Vec<MoebiusMap> = mirrors.iter().map(inversion_in_circle).collect();
        generators.push(MoebiusMap::translation(c(1.0, 0.0)));
        generators.push(MoebiusMap::translation(c(-1.0, 0.0)));
        PackingSpec {
            seed: vec![
                lower().oriented(),
                upper().oriented(),
                Disk::inside(c(0.0, -0.5), 0.5).unwrap().oriented(),
                Disk::inside(c(0.0, 0.5), 0.5).unwrap().oriented(),
            ],
            generators,
            depth,
            min_radius,
            duals: mirrors,
        }
    }

    /// The circle centered at lambda0 + n/2 through lambda0 and lambda0 + n.
    pub fn c_n(n: f64) -> GeneralizedCircle {
        GeneralizedCircle::circle(lambda0() + c(0.5 * n, 0.0), 0.5 * n).unwrap()
    }

    /// Forward endpoint lambda0, backward endpoint lambda0 + n.
    pub fn frame(n: f64) -> FrameSpec {
        FrameSpec::new(c_n(n), lambda0().into(), (lambda0() + c(n, 0.0)).into())
            .expect("both endpoints lie on C_n")
    }

    fn crossings(circle: &GeneralizedCircle, y: f64) -> Result<[C64; 2]> {
        let (center, r) = circle.center_radius().ok_or(Error::NoIntersection)?;
        let h = y - center.im;
        if h.abs() >= r {
            return Err(Error::NoIntersection);
        }
        let s = (r - h.abs()).sqrt() * (r + h.abs()).sqrt();
        Ok([c(center.re - s, y), c(center.re + s, y)])
    }

    /// Normalized crossings with L1 as (u, v) and with L2 as (w, z), signed
    /// so that L1 lies on the positive side.
    pub fn quadruple(n: f64) -> Result<Quadruple> {
        let x = frame(n);
        let g = x.normalization()?;
        let image = |p: C64| -> Result<f64> {
            g.apply(p.into()).finite().map(|z| z.re).ok_or_else(|| Error::Domain("crossing sent to infinity".into()))
        };
        let circle = c_n(n);
        let lower = crossings(&circle, -1.0)?;
        let upper = crossings(&circle, 1.0)?;
        let (mut a, mut b) = (image(lower[0])?, image(lower[1])?);
        let (mut p, mut q) = (image(upper[0])?, image(upper[1])?);
        if a < 0.0 {
            (a, b, p, q) = (-a, -b, -p, -q);
        }
        let q4 = Quadruple { u: a.min(b), v: a.max(b), w: p.max(q), z: p.min(q) };
        q4.check_signs()?;
        Ok(q4)
    }
}

/// A circle crossing the unit circle near -i at the given small angle,
/// lying mostly in the outer seed disk.
pub fn shallow_crossing(angle: f64) -> GeneralizedCircle {
    // |inversive product| = (1 + R^2 - d^2) / 2R = cos(angle).
    let r = 4.0;
    let d = (1.0 + r * r - 2.0 * r * angle.cos()).sqrt();
    GeneralizedCircle::circle(c(0.0, d), r).unwrap()
}

/// Orbit base whose ball contains a near-horocycle: the shallow crossing
/// moved by a group element.
pub fn accumulation_base(angle: f64) -> GeneralizedCircle {
    apply_circle(&apollonian_word_map(&[1, 2]), &shallow_crossing(angle))
}
