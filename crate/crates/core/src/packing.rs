//! Circle packings generated by reflection groups: breadth-first generation,
//! tangency structure, strip coordinates at a cusp and the decomposition of a
//! circle into packing arcs and residual limit-set pieces.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circlespace::{apply_circle, intersect, CircleFrame, Disk, GeneralizedCircle, Intersection};
use crate::dedup::TolerantIndex;
use crate::error::{Error, Result};
use crate::moebius::{to_infinity_coords, ExtendedComplex, MoebiusMap, C64};
use crate::recurrence::GapSet;
use crate::{ALGEBRAIC_TOL, CIRCLE_EQ_TOL, HASH_GRID};

/// Residual pieces narrower than this are reported as points.
pub const POINT_WIDTH: f64 = 1e-7;
/// Arcs overlapping by less than this are treated as touching.
const ARC_SNAP: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackingSpec {
    /// Oriented circles; the disk {Q > 0} of each is a disk of the packing.
    pub seed: Vec<GeneralizedCircle>,
    pub generators: Vec<MoebiusMap>,
    pub depth: usize,
    pub min_radius: f64,
    /// Circles drawn dashed when rendering.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub duals: Vec<GeneralizedCircle>,
}

impl PackingSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.min_radius > 0.0) {
            return Err(Error::Domain(format!("min_radius must be positive, got {}", self.min_radius)));
        }
        for (i, a) in self.seed.iter().enumerate() {
            for b in &self.seed[i + 1..] {
                if let Some(reason) = overlap_reason(a, b) {
                    return Err(Error::Invariant { word: vec![], reason: format!("seed {i}: {reason}") });
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackedDisk {
    #[serde(flatten)]
    pub disk: Disk,
    /// Index of the seed disk this one is an image of.
    pub seed: usize,
    /// Generator indices; the disk is g[w0] g[w1] ... applied to the seed.
    pub word: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TangencyPoint {
    pub point: ExtendedComplex,
    pub disks: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CirclePacking {
    #[serde(flatten)]
    pub spec: PackingSpec,
    pub disks: Vec<PackedDisk>,
    pub tangencies: Vec<TangencyPoint>,
}

fn coefficient_scale(c: &GeneralizedCircle) -> f64 {
    c.coefficients().iter().fold(1.0f64, |m, x| m.max(x.abs()))
}

/// Tolerance on inversive products, relative to the coefficient sizes.
fn product_tol(a: &GeneralizedCircle, b: &GeneralizedCircle) -> f64 {
    ALGEBRAIC_TOL * coefficient_scale(a) * coefficient_scale(b)
}

/// Disks with disjoint interiors have inversive product at most -1.
fn overlap_reason(a: &GeneralizedCircle, b: &GeneralizedCircle) -> Option<String> {
    let p = a.inversive_product(b);
    if p > -1.0 + product_tol(a, b) {
        Some(format!("disks overlap (inversive product {p})"))
    } else {
        None
    }
}

fn same_disk(a: &Disk, b: &Disk) -> bool {
    let (x, y) = (a.oriented().coefficients(), b.oriented().coefficients());
    x.iter().zip(&y).all(|(p, q)| (p - q).abs() <= CIRCLE_EQ_TOL * (1.0 + p.abs()))
}

/// Both solutions k4 of the Descartes relation.
pub fn descartes_solve(k1: f64, k2: f64, k3: f64) -> Result<(f64, f64)> {
    let radicand = k1 * k2 + k2 * k3 + k3 * k1;
    if radicand < -1e-12 {
        return Err(Error::NonTangent);
    }
    let root = 2.0 * radicand.max(0.0).sqrt();
    let sum = k1 + k2 + k3;
    Ok((sum + root, sum - root))
}

/// |(sum k)^2 - 2 sum k^2| for a quadruple of curvatures.
pub fn descartes_defect(k: [f64; 4]) -> f64 {
    let s: f64 = k.iter().sum();
    let q: f64 = k.iter().map(|x| x * x).sum();
    (s * s - 2.0 * q).abs()
}

/// Reflection in a circle: z -> (-B conj(z) - C) / (A conj(z) + conj(B)).
pub fn inversion_in_circle(c: &GeneralizedCircle) -> MoebiusMap {
    let a = C64::new(c.a, 0.0);
    let cc = C64::new(c.c, 0.0);
    MoebiusMap::new(-c.b, -cc, a, c.b.conj(), true).expect("a normalized circle has determinant -1")
}

/// For each generator, the index of a generator equal to its inverse.
fn inverse_table(generators: &[MoebiusMap]) -> Vec<Option<usize>> {
    generators
        .iter()
        .map(|g| {
            let inv = g.inverse();
            generators.iter().position(|h| h.approx_eq(&inv, 1e-8))
        })
        .collect()
}

pub fn generate_packing(spec: &PackingSpec) -> Result<CirclePacking> {
    spec.validate()?;
    let inverses = inverse_table(&spec.generators);
    let mut disks: Vec<PackedDisk> = Vec::new();
    let mut index = TolerantIndex::new(HASH_GRID, CIRCLE_EQ_TOL);
    let mut frontier = Vec::new();
    for (i, c) in spec.seed.iter().enumerate() {
        let disk = Disk::from_oriented(c);
        if find_disk(&index, &disks, &disk).is_none() {
            index.insert(&disk.circle.coefficients(), disks.len());
            frontier.push(disks.len());
            disks.push(PackedDisk { disk, seed: i, word: vec![] });
        }
    }
    for _ in 0..spec.depth {
        let jobs: Vec<(usize, usize)> = (0..spec.generators.len())
            .flat_map(|g| frontier.iter().map(move |&p| (g, p)))
            .filter(|&(g, p)| match (disks[p].word.first(), inverses[g]) {
                (Some(&first), Some(inv)) => first != inv,
                _ => true,
            })
            .collect();
        let images: Vec<Option<Disk>> = jobs
            .par_iter()
            .map(|&(g, p)| {
                let img = disks[p].disk.image(&spec.generators[g]);
                (img.spherical_size() >= spec.min_radius).then_some(img)
            })
            .collect();
        let mut next = Vec::new();
        for (&(g, p), img) in jobs.iter().zip(images) {
            let Some(disk) = img else { continue };
            if find_disk(&index, &disks, &disk).is_some() {
                continue;
            }
            let mut word = vec![g];
            word.extend_from_slice(&disks[p].word);
            let oriented = disk.oriented();
            let clash = disks
                .par_iter()
                .find_first(|d| overlap_reason(&d.disk.oriented(), &oriented).is_some());
            if let Some(other) = clash {
                let reason = overlap_reason(&other.disk.oriented(), &oriented).unwrap_or_default();
                return Err(Error::Invariant { word, reason: format!("against word {:?}: {reason}", other.word) });
            }
            index.insert(&disk.circle.coefficients(), disks.len());
            next.push(disks.len());
            disks.push(PackedDisk { disk, seed: disks[p].seed, word });
        }
        frontier = next;
    }
    let tangencies = find_tangencies(&disks);
    Ok(CirclePacking { spec: spec.clone(), disks, tangencies })
}

fn find_disk(index: &TolerantIndex, disks: &[PackedDisk], disk: &Disk) -> Option<usize> {
    let key = disk.circle.coefficients();
    let neg: Vec<f64> = key.iter().map(|x| -x).collect();
    index
        .find(&key, |id| same_disk(&disks[id].disk, disk))
        .or_else(|| index.find(&neg, |id| same_disk(&disks[id].disk, disk)))
}

fn find_tangencies(disks: &[PackedDisk]) -> Vec<TangencyPoint> {
    (0..disks.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let a = disks[i].disk.oriented();
            disks[i + 1..].iter().enumerate().filter_map(move |(off, d)| {
                let b = d.disk.oriented();
                let p = a.inversive_product(&b);
                if (p + 1.0).abs() > product_tol(&a, &b) {
                    return None;
                }
                match intersect(&a, &b, 1e-6) {
                    Intersection::Tangent { point } => Some(TangencyPoint { point, disks: [i, i + 1 + off] }),
                    _ => None,
                }
            })
        })
        .collect()
}

impl CirclePacking {
    /// The depth actually used to generate the packing.
    pub fn depth(&self) -> usize {
        self.disks.iter().map(|d| d.word.len()).max().unwrap_or(0)
    }

    pub fn orientation_reversing(&self) -> bool {
        self.spec.generators.iter().any(MoebiusMap::is_anti)
    }

    /// The sub-packing of disks with words of length at most `depth`.
    pub fn restrict_to_depth(&self, depth: usize) -> CirclePacking {
        let keep = self.disks.iter().take_while(|d| d.word.len() <= depth).count();
        CirclePacking {
            spec: PackingSpec { depth: depth.min(self.spec.depth), ..self.spec.clone() },
            disks: self.disks[..keep].to_vec(),
            tangencies: self.tangencies.iter().filter(|t| t.disks[1] < keep).copied().collect(),
        }
    }

    /// Checks the packing invariants; used after loading from JSON.
    pub fn validate(&self) -> Result<()> {
        self.spec.validate()?;
        for (i, a) in self.disks.iter().enumerate() {
            for b in &self.disks[i + 1..] {
                if let Some(reason) = overlap_reason(&a.disk.oriented(), &b.disk.oriented()) {
                    return Err(Error::Invariant { word: b.word.clone(), reason });
                }
            }
        }
        for t in &self.tangencies {
            for &i in &t.disks {
                let disk = self.disks.get(i).ok_or_else(|| {
                    Error::Invariant { word: vec![], reason: format!("tangency refers to missing disk {i}") }
                })?;
                if !disk.disk.circle.contains_point(t.point, 1e-8) {
                    return Err(Error::Invariant {
                        word: disk.word.clone(),
                        reason: format!("tangency point {} is off its circle", t.point),
                    });
                }
            }
            let sharing = self.disks.iter().filter(|d| d.disk.circle.contains_point(t.point, 1e-8)).count();
            if sharing != 2 {
                return Err(Error::Invariant {
                    word: vec![],
                    reason: format!("tangency point {} lies on {sharing} circles", t.point),
                });
            }
        }
        Ok(())
    }

    /// Sets of four mutually tangent disks.
    pub fn tangent_quadruples(&self) -> Vec<[usize; 4]> {
        let mut adj = vec![BTreeSet::new(); self.disks.len()];
        for t in &self.tangencies {
            adj[t.disks[0]].insert(t.disks[1]);
            adj[t.disks[1]].insert(t.disks[0]);
        }
        let mut out = Vec::new();
        for i in 0..adj.len() {
            for &j in adj[i].range(i + 1..) {
                for &k in adj[j].range(j + 1..) {
                    if !adj[i].contains(&k) {
                        continue;
                    }
                    for &l in adj[k].range(k + 1..) {
                        if adj[i].contains(&l) && adj[j].contains(&l) {
                            out.push([i, j, k, l]);
                        }
                    }
                }
            }
        }
        out
    }

    /// Largest Descartes defect over tangent quadruples, relative to the sum
    /// of squared curvatures.
    pub fn max_descartes_defect(&self) -> f64 {
        self.tangent_quadruples()
            .iter()
            .map(|q| {
                let k = q.map(|i| self.disks[i].disk.curvature());
                let scale: f64 = k.iter().map(|x| x * x).sum();
                descartes_defect(k) / scale.max(1.0)
            })
            .fold(0.0, f64::max)
    }

    pub fn find_tangency(&self, p: ExtendedComplex, tol: f64) -> Option<usize> {
        self.tangencies.iter().position(|t| t.point.chordal_distance(&p) <= tol)
    }
}

pub fn tangency_points(packing: &CirclePacking) -> Vec<TangencyPoint> {
    packing.tangencies.clone()
}

/// Bounding circles of the two disks tangent at the cusp, oriented so that
/// the disks are {Q > 0}.
pub fn double_horocycle_at(
    sigma: &TangencyPoint,
    packing: &CirclePacking,
) -> Result<(GeneralizedCircle, GeneralizedCircle)> {
    let known = packing.tangencies.iter().any(|t| {
        t.disks == sigma.disks && t.point.chordal_distance(&sigma.point) <= 1e-8
    });
    if !known {
        return Err(Error::Domain(format!("{} is not a tangency of the packing", sigma.point)));
    }
    let [i, j] = sigma.disks;
    Ok((packing.disks[i].disk.oriented(), packing.disks[j].disk.oriented()))
}

/// Coordinates with the cusp at infinity and its double horocycle on the
/// lines Im z = 0 (first disk) and Im z = 1 (second disk).
pub fn strip_coords_at(sigma: &TangencyPoint, packing: &CirclePacking) -> Result<MoebiusMap> {
    let (l1, l2) = double_horocycle_at(sigma, packing)?;
    let g = to_infinity_coords(sigma.point);
    let (m1, m2) = (apply_circle(&g, &l1), apply_circle(&g, &l2));
    // Rotate the common normal to i; then both lines are horizontal.
    let rot = C64::new(0.0, 1.0) / (m1.b / m1.b.norm());
    let r = MoebiusMap::affine(rot, C64::new(0.0, 0.0))?;
    let (h1, h2) = (apply_circle(&r, &m1), apply_circle(&r, &m2));
    let height = |h: &GeneralizedCircle| -0.5 * h.c / h.b.im;
    let (y1, y2) = (height(&h1), height(&h2));
    let span = y2 - y1;
    let scale = MoebiusMap::affine(C64::new(1.0 / span, 0.0), C64::new(0.0, -y1 / span))?;
    Ok(scale.compose(&r).compose(&g))
}

/// The open arc of a circle inside one packing disk, in the angle
/// parametrization of [`CircleFrame`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskArc {
    pub disk: usize,
    pub center: f64,
    pub half_width: f64,
}

/// A closed piece of the residual; a point when `start == end` up to
/// [`POINT_WIDTH`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualPiece {
    pub start: f64,
    pub end: f64,
}

impl ResidualPiece {
    pub fn width(&self) -> f64 {
        self.end - self.start
    }

    pub fn is_point(&self) -> bool {
        self.width() <= POINT_WIDTH
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.start + self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcDecomposition {
    pub depth: usize,
    pub arcs: Vec<DiskArc>,
    /// Angle set covered by the arcs, as a circle gap set.
    pub residual: GapSet,
    pub pieces: Vec<ResidualPiece>,
    pub residual_measure: f64,
    /// Residual still has pieces of positive length at this depth.
    pub undetermined: bool,
}

impl ArcDecomposition {
    /// |C ∩ Λ| when the residual has resolved into points.
    pub fn point_count(&self) -> Option<usize> {
        if self.undetermined {
            None
        } else {
            Some(self.pieces.len())
        }
    }

    pub fn arc_measure(&self) -> f64 {
        self.arcs.iter().map(|a| 2.0 * a.half_width).sum()
    }
}

pub fn arc_decomposition(c: &GeneralizedCircle, packing: &CirclePacking) -> ArcDecomposition {
    let frame = CircleFrame::new(c);
    let arcs: Vec<DiskArc> = packing
        .disks
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.disk.circle.same_circle(c))
        .filter_map(|(i, d)| {
            frame.cap_arc(&d.disk.cap()).map(|(center, half_width)| DiskArc { disk: i, center, half_width })
        })
        .collect();
    let residual = GapSet::circle_arcs(arcs.iter().map(|a| (a.center - a.half_width, 2.0 * a.half_width)), ARC_SNAP);
    let pieces: Vec<ResidualPiece> =
        residual.complement_pieces().into_iter().map(|[start, end]| ResidualPiece { start, end }).collect();
    let residual_measure = pieces.iter().map(ResidualPiece::width).sum();
    let undetermined = pieces.iter().any(|p| !p.is_point());
    ArcDecomposition { depth: packing.depth(), arcs, residual, pieces, residual_measure, undetermined }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PointKind {
    IsolatedParabolic { tangency: usize },
    Unclassified,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PersistentPoint {
    pub angle: f64,
    pub point: ExtendedComplex,
    #[serde(flatten)]
    pub kind: PointKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitArcset {
    pub depths: Vec<usize>,
    pub measures: Vec<f64>,
    /// Residual at the deepest level.
    pub residual: GapSet,
    pub points: Vec<PersistentPoint>,
    /// Positive-length pieces whose measure held up across the last two depths.
    pub accumulating: Vec<ResidualPiece>,
    /// Positive-length pieces still shrinking.
    pub shrinking: Vec<ResidualPiece>,
}

impl LimitArcset {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.accumulating.is_empty() && self.shrinking.is_empty()
    }

    /// Number of points of C ∩ Λ when the residual is finite at the deepest level.
    pub fn point_count(&self) -> Option<usize> {
        (self.accumulating.is_empty() && self.shrinking.is_empty()).then_some(self.points.len())
    }

    pub fn parabolic_count(&self) -> usize {
        self.points.iter().filter(|p| matches!(p.kind, PointKind::IsolatedParabolic { .. })).count()
    }

    /// Whether C ∩ Λ has at least two points, judging from the residual.
    pub fn at_least_two(&self) -> bool {
        !self.accumulating.is_empty() || !self.shrinking.is_empty() || self.points.len() >= 2
    }
}

/// Compares residuals over the last `refine` generation depths.
pub fn limit_arcset(c: &GeneralizedCircle, packing: &CirclePacking, refine: usize) -> LimitArcset {
    let top = packing.depth();
    let first = (top + 1).saturating_sub(refine.max(1));
    let depths: Vec<usize> = (first..=top).collect();
    let levels: Vec<ArcDecomposition> =
        depths.iter().map(|&d| arc_decomposition(c, &packing.restrict_to_depth(d))).collect();
    let frame = CircleFrame::new(c);
    let last = levels.last().expect("at least one depth");
    let near = |a: f64, b: f64| {
        let d = (a - b).rem_euclid(2.0 * PI);
        d.min(2.0 * PI - d) <= 10.0 * POINT_WIDTH
    };
    let mut points = Vec::new();
    for piece in last.pieces.iter().filter(|p| p.is_point()) {
        let angle = piece.midpoint();
        let persistent = levels
            .iter()
            .all(|lvl| lvl.pieces.iter().any(|q| q.is_point() && near(q.midpoint(), angle)));
        if !persistent {
            continue;
        }
        let point = frame.point(angle);
        let kind = match packing.find_tangency(point, 1e-6) {
            Some(t) => PointKind::IsolatedParabolic { tangency: t },
            None => PointKind::Unclassified,
        };
        points.push(PersistentPoint { angle, point, kind });
    }
    let mut accumulating = Vec::new();
    let mut shrinking = Vec::new();
    let previous = if levels.len() >= 2 { Some(&levels[levels.len() - 2]) } else { None };
    for piece in last.pieces.iter().filter(|p| !p.is_point()) {
        let parent = previous.and_then(|lvl| {
            lvl.pieces.iter().find(|q| {
                let s = (piece.start - q.start).rem_euclid(2.0 * PI);
                s <= q.width() + ARC_SNAP
            })
        });
        let stable = match parent {
            Some(q) => piece.width() >= 0.5 * q.width(),
            None => false,
        };
        if stable {
            accumulating.push(*piece);
        } else {
            shrinking.push(*piece);
        }
    }
    LimitArcset {
        depths,
        measures: levels.iter().map(|l| l.residual_measure).collect(),
        residual: last.residual.clone(),
        points,
        accumulating,
        shrinking,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circlespace::circle_through;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn descartes_examples() {
        let (a, b) = descartes_solve(-1.0, 2.0, 2.0).unwrap();
        assert!((a - 3.0).abs() < 1e-12 && (b - 3.0).abs() < 1e-12);
        // (-1 + 2 + 2 + 3)^2 = 36 = 2 (1 + 4 + 4 + 9)
        assert!(descartes_defect([-1.0, 2.0, 2.0, 3.0]) < 1e-9);
        let (a, b) = descartes_solve(0.0, 0.0, 1.0).unwrap();
        assert_eq!((a, b), (1.0, 1.0));
        assert!(descartes_defect([0.0, 0.0, 1.0, 1.0]) < 1e-9);
        let (a, b) = descartes_solve(1.0, 1.0, 1.0).unwrap();
        assert!((a - (3.0 + 2.0 * 3f64.sqrt())).abs() < 1e-12);
        assert!((b - (3.0 - 2.0 * 3f64.sqrt())).abs() < 1e-12);
        assert!(descartes_defect([1.0, 1.0, 1.0, a]) < 1e-9);
        assert!(descartes_defect([1.0, 1.0, 1.0, b]) < 1e-9);
        assert!(matches!(descartes_solve(-1.0, -1.0, 2.0), Err(Error::NonTangent)));
    }

    #[test]
    fn inversions() {
        let inv = inversion_in_circle(&GeneralizedCircle::unit_circle());
        let z = inv.apply(ExtendedComplex::new(2.0, 1.0)).finite().unwrap();
        assert!((z - c(2.0, 1.0).inv().conj()).norm() < 1e-14);
        let conj = inversion_in_circle(&GeneralizedCircle::real_line());
        assert!(conj.approx_eq(&MoebiusMap::conjugation(), 1e-14));
        let circle = GeneralizedCircle::circle(c(0.3, -1.2), 0.7).unwrap();
        let r = inversion_in_circle(&circle);
        assert!(r.is_anti());
        assert!(r.compose(&r).is_identity(1e-12));
        for p in circle.sample_points(16) {
            assert!(r.apply(p).chordal_distance(&p) < 1e-8);
        }
    }

    fn two_disks() -> PackingSpec {
        PackingSpec {
            seed: vec![Disk::inside(c(0.0, 0.0), 1.0).unwrap().oriented(), Disk::inside(c(2.0, 0.0), 1.0).unwrap().oriented()],
            generators: vec![],
            depth: 0,
            min_radius: 1e-3,
            duals: vec![],
        }
    }

    #[test]
    fn tangency_of_two_unit_disks() {
        let p = generate_packing(&two_disks()).unwrap();
        assert_eq!(p.tangencies.len(), 1);
        let t = p.tangencies[0];
        assert!(t.point.chordal_distance(&ExtendedComplex::real(1.0)) < 1e-9);
        assert_eq!(t.disks, [0, 1]);
        let (l1, l2) = double_horocycle_at(&t, &p).unwrap();
        assert!(l1.same_circle(&p.disks[0].disk.circle) && l2.same_circle(&p.disks[1].disk.circle));
        let g = strip_coords_at(&t, &p).unwrap();
        let (m1, m2) = (apply_circle(&g, &l1), apply_circle(&g, &l2));
        assert!(m1.a.abs() < 1e-12 && m2.a.abs() < 1e-12);
        assert!(m1.same_circle(&GeneralizedCircle::horizontal_line(0.0)));
        assert!(m2.same_circle(&GeneralizedCircle::horizontal_line(1.0)));
        let bogus = TangencyPoint { point: ExtendedComplex::real(5.0), disks: [0, 1] };
        assert!(double_horocycle_at(&bogus, &p).is_err());
    }

    #[test]
    fn disjoint_disks_have_no_tangencies() {
        let mut spec = two_disks();
        spec.seed[1] = Disk::inside(c(3.0, 0.0), 1.0).unwrap().oriented();
        assert!(generate_packing(&spec).unwrap().tangencies.is_empty());
    }

    #[test]
    fn overlapping_seed_is_rejected() {
        let mut spec = two_disks();
        spec.seed[1] = Disk::inside(c(1.5, 0.0), 1.0).unwrap().oriented();
        assert!(matches!(generate_packing(&spec), Err(Error::Invariant { .. })));
    }

    #[test]
    fn circle_inside_one_disk() {
        let p = generate_packing(&two_disks()).unwrap();
        let inner = GeneralizedCircle::circle(c(0.0, 0.0), 0.5).unwrap();
        let dec = arc_decomposition(&inner, &p);
        assert_eq!(dec.arcs.len(), 1);
        assert!(dec.pieces.is_empty() && dec.residual_measure == 0.0);
        assert!(limit_arcset(&inner, &p, 1).is_empty());
    }

    #[test]
    fn circle_through_the_tangency_point() {
        let p = generate_packing(&two_disks()).unwrap();
        // Tangent to the real axis at 1, so it crosses into both disks there.
        let through = circle_through(
            ExtendedComplex::real(1.0),
            ExtendedComplex::new(0.5, 0.5),
            ExtendedComplex::new(1.5, 0.5),
        )
        .unwrap();
        let dec = arc_decomposition(&through, &p);
        assert!((dec.arc_measure() + dec.residual_measure - 2.0 * PI).abs() < 1e-8);
        let set = limit_arcset(&through, &p, 1);
        assert_eq!(set.parabolic_count(), 1);
    }
}
