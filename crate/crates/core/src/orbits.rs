//! Word balls in a finitely generated group and orbits of circles under them:
//! discreteness reports, stabilizers, scans of circles meeting the limit set
//! in k points, and detection of near-horocycle orbit elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circlespace::{
    apply_circle, circle_distance, covering_phi, normalize, sphere_distance, to_spherical, CircleFrame,
    GeneralizedCircle, Vec3,
};
use crate::dedup::TolerantIndex;
use crate::error::{Error, Result};
use crate::halfspace::hull_meets_ball;
use crate::moebius::{to_infinity_coords, ExtendedComplex, HyperbolicPoint, MoebiusMap, C64};
use crate::packing::{arc_decomposition, limit_arcset, CirclePacking};
use crate::{CIRCLE_EQ_TOL, HASH_GRID};

/// Default cap on the number of ball elements.
pub const DEFAULT_BUDGET: usize = 2_000_000;
/// Map equality tolerance inside a ball.
const MAP_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallElement {
    pub word: Vec<usize>,
    pub map: MoebiusMap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupBall {
    /// Letters: the generators followed by the inverses of non-involutions.
    pub letters: Vec<MoebiusMap>,
    /// Number of user-supplied generators at the front of `letters`.
    pub generator_count: usize,
    pub inverse_letter: Vec<usize>,
    pub elements: Vec<BallElement>,
    pub max_length: usize,
}

fn map_key(m: &MoebiusMap) -> Vec<f64> {
    let mut key: Vec<f64> = m.entries().iter().flat_map(|z| [z.re, z.im]).collect();
    key.push(if m.is_anti() { 1.0 } else { 0.0 });
    key
}

impl GroupBall {
    pub fn identity_only() -> Self {
        GroupBall {
            letters: vec![],
            generator_count: 0,
            inverse_letter: vec![],
            elements: vec![BallElement { word: vec![], map: MoebiusMap::IDENTITY }],
            max_length: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The ball of the conjugate group f G f^-1, with the same words.
    pub fn conjugated(&self, f: &MoebiusMap) -> GroupBall {
        let finv = f.inverse();
        let conj = |g: &MoebiusMap| f.compose(g).compose(&finv);
        GroupBall {
            letters: self.letters.iter().map(conj).collect(),
            generator_count: self.generator_count,
            inverse_letter: self.inverse_letter.clone(),
            elements: self
                .elements
                .iter()
                .map(|e| BallElement { word: e.word.clone(), map: conj(&e.map) })
                .collect(),
            max_length: self.max_length,
        }
    }

    pub fn word_map(&self, word: &[usize]) -> MoebiusMap {
        word.iter().fold(MoebiusMap::IDENTITY, |m, &l| m.compose(&self.letters[l]))
    }
}

/// Generators followed by the inverses of the non-involutions, with the
/// index of each letter's inverse.
pub fn alphabet(generators: &[MoebiusMap]) -> (Vec<MoebiusMap>, Vec<usize>) {
    let mut letters = generators.to_vec();
    let mut inverse_letter = vec![usize::MAX; generators.len()];
    for (i, g) in generators.iter().enumerate() {
        if g.compose(g).is_identity(MAP_TOL) {
            inverse_letter[i] = i;
        } else {
            inverse_letter[i] = letters.len();
            inverse_letter.push(i);
            letters.push(g.inverse());
        }
    }
    (letters, inverse_letter)
}

/// All reduced words of length at most `max_length`, deduplicated as maps.
/// The element of a word w is letters[w0] ∘ letters[w1] ∘ ...
pub fn enumerate_group(generators: &[MoebiusMap], max_length: usize, budget: usize) -> Result<GroupBall> {
    let (letters, inverse_letter) = alphabet(generators);
    let mut elements = vec![BallElement { word: vec![], map: MoebiusMap::IDENTITY }];
    let mut index = TolerantIndex::new(HASH_GRID, MAP_TOL);
    index.insert(&map_key(&MoebiusMap::IDENTITY), 0);
    let mut frontier = vec![0usize];
    for _ in 0..max_length {
        let jobs: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&p| (0..letters.len()).map(move |l| (p, l)))
            .filter(|&(p, l)| elements[p].word.last().is_none_or(|&last| inverse_letter[last] != l))
            .collect();
        let maps: Vec<MoebiusMap> =
            jobs.par_iter().map(|&(p, l)| elements[p].map.compose(&letters[l])).collect();
        let mut next = Vec::new();
        for (&(p, l), map) in jobs.iter().zip(maps) {
            let key = map_key(&map);
            let neg: Vec<f64> = key.iter().enumerate().map(|(i, x)| if i < 8 { -x } else { *x }).collect();
            let same = |id: usize| elements[id].map.approx_eq(&map, MAP_TOL);
            if index.find(&key, same).is_some() || index.find(&neg, same).is_some() {
                continue;
            }
            if elements.len() >= budget {
                return Err(Error::BallTooLarge(budget));
            }
            let mut word = elements[p].word.clone();
            word.push(l);
            index.insert(&key, elements.len());
            next.push(elements.len());
            elements.push(BallElement { word, map });
        }
        frontier = next;
    }
    Ok(GroupBall { letters, generator_count: generators.len(), inverse_letter, elements, max_length })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub word: Vec<usize>,
    pub circle: GeneralizedCircle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallSummary {
    #[serde(rename = "L")]
    pub max_length: usize,
    pub generators: Vec<MoebiusMap>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub base: GeneralizedCircle,
    pub ball: BallSummary,
    pub entries: Vec<OrbitEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_radius: Option<f64>,
}

fn circle_key(c: &GeneralizedCircle) -> Vec<f64> {
    c.canonical().coefficients().to_vec()
}

/// Images of the circle under the ball, first word wins.
pub fn orbit_of_circle(c: &GeneralizedCircle, ball: &GroupBall) -> OrbitRecord {
    orbit_with_cutoff(c, ball, None)
}

/// As [`orbit_of_circle`], dropping images with spherical radius below `min_radius`.
pub fn orbit_with_cutoff(c: &GeneralizedCircle, ball: &GroupBall, min_radius: Option<f64>) -> OrbitRecord {
    let images: Vec<GeneralizedCircle> = ball.elements.par_iter().map(|e| apply_circle(&e.map, c)).collect();
    let mut index = TolerantIndex::new(HASH_GRID, CIRCLE_EQ_TOL);
    let mut entries: Vec<OrbitEntry> = Vec::new();
    for (e, img) in ball.elements.iter().zip(images) {
        if let Some(r) = min_radius {
            let s = to_spherical(&img).radius;
            if s.min(std::f64::consts::PI - s) < r {
                continue;
            }
        }
        let key = circle_key(&img);
        let neg: Vec<f64> = key.iter().map(|x| -x).collect();
        let same = |id: usize| entries[id].circle.same_circle(&img);
        if index.find(&key, same).is_some() || index.find(&neg, same).is_some() {
            continue;
        }
        index.insert(&key, entries.len());
        entries.push(OrbitEntry { word: e.word.clone(), circle: img });
    }
    let generators = ball.letters[..ball.generator_count].to_vec();
    OrbitRecord { base: *c, ball: BallSummary { max_length: ball.max_length, generators }, entries, min_radius }
}

impl OrbitRecord {
    pub fn max_length(&self) -> usize {
        self.ball.max_length
    }

    /// Every entry is its word applied to the base.
    pub fn validate(&self) -> Result<()> {
        let (letters, _) = alphabet(&self.ball.generators);
        for e in &self.entries {
            if e.word.iter().any(|&l| l >= letters.len()) {
                return Err(Error::Invariant { word: e.word.clone(), reason: "letter out of range".into() });
            }
            let g = e.word.iter().fold(MoebiusMap::IDENTITY, |m, &l| m.compose(&letters[l]));
            if !apply_circle(&g, &self.base).same_circle(&e.circle) {
                return Err(Error::Invariant { word: e.word.clone(), reason: "entry is not the image of the base".into() });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum DiscretenessVerdict {
    /// Positive gap at this truncation; `None` means a single circle.
    LooksDiscrete { gap: Option<f64> },
    Accumulating { gaps: Vec<f64> },
    Inconclusive { gaps: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscretenessReport {
    pub max_length: usize,
    pub considered: usize,
    pub min_gap: Option<f64>,
    pub pair: Option<[usize; 2]>,
    pub verdict: DiscretenessVerdict,
    pub caveat: String,
}

/// Gaps below this count as zero.
const GAP_FLOOR: f64 = 1e-9;

pub fn discreteness_report(orbit: &OrbitRecord, center: &HyperbolicPoint, r: f64) -> Result<DiscretenessReport> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("ball radius must be positive, got {r}")));
    }
    let near: Vec<usize> =
        (0..orbit.entries.len()).filter(|&i| hull_meets_ball(&orbit.entries[i].circle, center, r)).collect();
    let best = near
        .par_iter()
        .enumerate()
        .flat_map_iter(|(a, &i)| {
            near[a + 1..].iter().map(move |&j| (circle_distance(&orbit.entries[i].circle, &orbit.entries[j].circle), [i, j]))
        })
        .min_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    let (min_gap, pair) = match best {
        Some((d, p)) => (Some(d), Some(p)),
        None => (None, None),
    };
    let verdict = match min_gap {
        Some(g) if g <= GAP_FLOOR => DiscretenessVerdict::Accumulating { gaps: vec![g] },
        g => DiscretenessVerdict::LooksDiscrete { gap: g },
    };
    Ok(DiscretenessReport {
        max_length: orbit.max_length(),
        considered: near.len(),
        min_gap,
        pair,
        verdict,
        caveat: format!("finite truncation at word length {}; closedness is not certified", orbit.max_length()),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendReport {
    pub lengths: Vec<usize>,
    pub gaps: Vec<Option<f64>>,
    pub verdict: DiscretenessVerdict,
}

/// Minimum gaps across word lengths: stable within 10% between the last two
/// lengths looks discrete; strictly decreasing by a factor of two overall is
/// accumulating.
pub fn discreteness_trend(
    c: &GeneralizedCircle,
    generators: &[MoebiusMap],
    lengths: &[usize],
    center: &HyperbolicPoint,
    r: f64,
) -> Result<TrendReport> {
    let top = *lengths.iter().max().ok_or_else(|| Error::Domain("no word lengths".into()))?;
    let ball = enumerate_group(generators, top, DEFAULT_BUDGET)?;
    let mut gaps = Vec::new();
    for &l in lengths {
        let sub = GroupBall {
            elements: ball.elements.iter().filter(|e| e.word.len() <= l).cloned().collect(),
            max_length: l,
            ..ball.clone()
        };
        gaps.push(discreteness_report(&orbit_of_circle(c, &sub), center, r)?.min_gap);
    }
    Ok(TrendReport { lengths: lengths.to_vec(), verdict: trend_verdict(&gaps), gaps })
}

pub fn trend_verdict(gaps: &[Option<f64>]) -> DiscretenessVerdict {
    let finite: Vec<f64> = gaps.iter().flatten().copied().collect();
    if finite.len() < gaps.len() || finite.len() < 2 {
        return DiscretenessVerdict::LooksDiscrete { gap: finite.last().copied() };
    }
    let n = finite.len();
    let (prev, last) = (finite[n - 2], finite[n - 1]);
    let decreasing = finite.windows(2).all(|w| w[1] < w[0]);
    if last > GAP_FLOOR && (last - prev).abs() <= 0.1 * prev {
        DiscretenessVerdict::LooksDiscrete { gap: Some(last) }
    } else if last <= GAP_FLOOR || (decreasing && finite[0] >= 2.0 * last) {
        DiscretenessVerdict::Accumulating { gaps: finite }
    } else {
        DiscretenessVerdict::Inconclusive { gaps: finite }
    }
}

/// Ball elements fixing the circle (as a set); always includes the identity.
pub fn stabilizer_search(c: &GeneralizedCircle, ball: &GroupBall) -> Vec<BallElement> {
    ball.elements
        .par_iter()
        .filter(|e| apply_circle(&e.map, c).same_circle(c))
        .cloned()
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BkOptions {
    pub eps: f64,
    pub samples: usize,
    pub seed: u64,
    /// Word length of the ball used to compare members.
    pub word_length: usize,
}

impl Default for BkOptions {
    fn default() -> Self {
        BkOptions { eps: 1e-3, samples: 200, seed: 7, word_length: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BkEntry {
    pub candidate: usize,
    /// |C ∩ Λ| when the residual resolved into points.
    pub count: Option<usize>,
    pub member: bool,
    pub samples: usize,
    /// Sampled neighbours, distinct from C, also resolving into k points.
    pub violations: usize,
    /// Fewest packing disks met by a sampled neighbour.
    pub min_components_met: Option<usize>,
    /// Earlier member mapped onto this one by a ball element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub same_orbit_as: Option<(usize, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BkReport {
    pub k: usize,
    pub depth: usize,
    pub options: BkOptions,
    pub entries: Vec<BkEntry>,
}

/// A point uniformly distributed in the spherical cap of radius `delta` about `eta`.
fn sample_in_cap(rng: &mut impl Rng, eta: Vec3, delta: f64) -> Vec3 {
    let k = if eta[2].abs() < 0.9 { [0.0, 0.0, 1.0] } else { [1.0, 0.0, 0.0] };
    let e1 = normalize(crate::circlespace::cross(k, eta));
    let e2 = crate::circlespace::cross(eta, e1);
    let cos_a = 1.0 - rng.gen::<f64>() * (1.0 - delta.cos());
    let a = cos_a.clamp(-1.0, 1.0).acos();
    let phi = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
    let (sa, ca) = a.sin_cos();
    let (sp, cp) = phi.sin_cos();
    normalize([
        ca * eta[0] + sa * (cp * e1[0] + sp * e2[0]),
        ca * eta[1] + sa * (cp * e1[1] + sp * e2[1]),
        ca * eta[2] + sa * (cp * e1[2] + sp * e2[2]),
    ])
}

/// Circles phi(x, d) with x within eps/4 of the cap center and d within
/// eps - eps/4 of the cap radius; all lie in the eps-annulus of `c`.
pub fn annulus_samples(c: &GeneralizedCircle, eps: f64, n: usize, seed: u64) -> Result<Vec<GeneralizedCircle>> {
    let sc = to_spherical(c);
    let delta = eps / 4.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let x = sample_in_cap(&mut rng, sc.center, delta);
            let d = rng.gen_range((sc.radius - eps + delta)..(sc.radius + eps - delta));
            covering_phi(x, d)
        })
        .collect()
}

pub fn bk_scan(
    packing: &CirclePacking,
    k: usize,
    candidates: &[GeneralizedCircle],
    opts: &BkOptions,
) -> Result<BkReport> {
    if k < 3 {
        return Err(Error::Domain(format!("k = {k}: three points are needed to pin a circle")));
    }
    let ball = enumerate_group(&packing.spec.generators, opts.word_length, DEFAULT_BUDGET)?;
    let mut entries: Vec<BkEntry> = Vec::new();
    for (idx, c) in candidates.iter().enumerate() {
        let count = arc_decomposition(c, packing).point_count();
        let member = count == Some(k);
        let mut entry = BkEntry {
            candidate: idx,
            count,
            member,
            samples: 0,
            violations: 0,
            min_components_met: None,
            same_orbit_as: None,
        };
        if member {
            let neighbours = annulus_samples(c, opts.eps, opts.samples, opts.seed.wrapping_add(idx as u64))?;
            let outcomes: Vec<(bool, usize)> = neighbours
                .par_iter()
                .filter(|d| circle_distance(d, c) > 1e-9)
                .map(|d| {
                    let dec = arc_decomposition(d, packing);
                    (dec.point_count() == Some(k), dec.arcs.len())
                })
                .collect();
            entry.samples = outcomes.len();
            entry.violations = outcomes.iter().filter(|o| o.0).count();
            entry.min_components_met = outcomes.iter().map(|o| o.1).min();
            entry.same_orbit_as = entries.iter().filter(|e| e.member).find_map(|e| {
                let earlier = &candidates[e.candidate];
                ball.elements
                    .iter()
                    .find(|g| apply_circle(&g.map, earlier).same_circle(c))
                    .map(|g| (e.candidate, g.word.clone()))
            });
        }
        entries.push(entry);
    }
    Ok(BkReport { k, depth: packing.depth(), options: *opts, entries })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HorocycleWitness {
    pub entry: usize,
    pub word: Vec<usize>,
    pub disk: usize,
    /// 1 - |inversive product| with the disk boundary.
    pub defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum AccumulationVerdict {
    /// The base meets Λ in at most one point at this depth.
    Refused { reason: String },
    DensePredicted { witness: HorocycleWitness },
    NoWitness { best: Option<HorocycleWitness> },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AccumulationOptions {
    pub tol: f64,
    /// Orbit circles smaller than this spherical radius are ignored.
    pub min_size: f64,
    pub refine: usize,
}

impl Default for AccumulationOptions {
    fn default() -> Self {
        AccumulationOptions { tol: 1e-6, min_size: 1e-2, refine: 2 }
    }
}

/// Looks for orbit circles lying almost entirely in a packing disk and
/// almost tangent to its boundary: arcs whose geodesic curvature in the
/// disk is close to 1.
pub fn accumulation_detector(
    orbit: &OrbitRecord,
    packing: &CirclePacking,
    opts: &AccumulationOptions,
) -> AccumulationVerdict {
    let base = limit_arcset(&orbit.base, packing, opts.refine);
    if !base.at_least_two() {
        return AccumulationVerdict::Refused {
            reason: format!("base meets the limit set in {} point(s) at this depth", base.points.len()),
        };
    }
    let best = orbit
        .entries
        .par_iter()
        .enumerate()
        .filter(|(_, e)| {
            let s = to_spherical(&e.circle).radius;
            s.min(std::f64::consts::PI - s) >= opts.min_size
        })
        .flat_map_iter(|(i, e)| {
            let frame = CircleFrame::new(&e.circle);
            packing.disks.iter().enumerate().filter_map(move |(j, d)| {
                if d.disk.circle.same_circle(&e.circle) {
                    return None;
                }
                let (_, half) = frame.cap_arc(&d.disk.cap())?;
                if half < 0.5 * std::f64::consts::PI {
                    return None;
                }
                let kappa = e.circle.inversive_product(&d.disk.circle).abs();
                if kappa > 1.0 + opts.tol {
                    return None;
                }
                Some(HorocycleWitness { entry: i, word: e.word.clone(), disk: j, defect: (1.0 - kappa).abs() })
            })
        })
        .min_by(|a, b| a.defect.total_cmp(&b.defect).then(a.entry.cmp(&b.entry)).then(a.disk.cmp(&b.disk)));
    match best {
        Some(w) if w.defect <= opts.tol => AccumulationVerdict::DensePredicted { witness: w },
        best => AccumulationVerdict::NoWitness { best },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SlopeVerdict {
    Rational { p: i64, q: i64 },
    IrrationalAtTolerance,
    NotThroughSigma,
}

/// Default denominator bound for [`rational_slope_test`].
pub const SLOPE_DENOMINATOR_BOUND: i64 = 1_000_000;

/// Continued-fraction search for p/q with q <= bound and |q x - p| <= tol.
pub fn small_rational(x: f64, bound: i64, tol: f64) -> Option<(i64, i64)> {
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > bound {
            break;
        }
        if (q2 as f64 * x - p2 as f64).abs() <= tol {
            return Some((p2, q2));
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a as f64;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

/// Slope of C at a rank-2 cusp in the lattice basis: C must pass through
/// sigma, and in coordinates with sigma at infinity its direction a u + b v
/// is tested for b / a rational.
pub fn rational_slope_test(
    sigma: ExtendedComplex,
    basis: (C64, C64),
    c: &GeneralizedCircle,
    bound: i64,
    tol: f64,
) -> Result<SlopeVerdict> {
    let (u, v) = basis;
    let det = u.re * v.im - u.im * v.re;
    if det.abs() <= 1e-12 * u.norm() * v.norm() {
        return Err(Error::Domain("basis vectors are dependent over the reals".into()));
    }
    if !c.contains_point(sigma, 1e-8) {
        return Ok(SlopeVerdict::NotThroughSigma);
    }
    let line = apply_circle(&to_infinity_coords(sigma), c);
    let w = C64::new(0.0, -1.0) * line.b / line.b.norm();
    let a = (w.re * v.im - w.im * v.re) / det;
    let b = (u.re * w.im - u.im * w.re) / det;
    // Slope b/a, or a/b near the vertical direction.
    let (num, den, flip) = if a.abs() >= b.abs() { (b, a, false) } else { (a, b, true) };
    let x = num / den;
    Ok(match small_rational(x, bound, tol) {
        Some((p, q)) if !flip => SlopeVerdict::Rational { p, q },
        Some((p, q)) => {
            let s = if p < 0 { -1 } else { 1 };
            SlopeVerdict::Rational { p: s * q, q: s * p }
        }
        None => SlopeVerdict::IrrationalAtTolerance,
    })
}

/// Spherical distance between the centers of two circles' caps, up to the
/// antipodal identification.
pub fn center_separation(a: &GeneralizedCircle, b: &GeneralizedCircle) -> f64 {
    let (sa, sb) = (to_spherical(a), to_spherical(b));
    sphere_distance(sa.center, sb.center).min(sphere_distance(sa.center, crate::circlespace::scale(sb.center, -1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::inversion_in_circle;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn loxodromics() -> Vec<MoebiusMap> {
        vec![
            MoebiusMap::holomorphic(c(2.0, 0.3), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.1)).unwrap(),
            MoebiusMap::holomorphic(c(3.0, 0.0), c(0.0, 1.5), c(0.0, -1.0), c(0.2, 0.0)).unwrap(),
        ]
    }

    #[test]
    fn small_balls() {
        let ball = enumerate_group(&loxodromics(), 0, 10).unwrap();
        assert_eq!(ball.len(), 1);
        let inv = inversion_in_circle(&GeneralizedCircle::unit_circle());
        let ball = enumerate_group(&[inv], 5, 10).unwrap();
        assert_eq!(ball.len(), 2);
        // Reduced words in a free group of rank 2: 1 + 4 + 12 + 36.
        let ball = enumerate_group(&loxodromics(), 3, 1000).unwrap();
        assert_eq!(ball.len(), 53);
        assert!(matches!(enumerate_group(&loxodromics(), 4, 100), Err(Error::BallTooLarge(100))));
    }

    #[test]
    fn words_are_shortlex_and_reproducible() {
        let ball = enumerate_group(&loxodromics(), 3, 1000).unwrap();
        for w in ball.elements.windows(2) {
            let (a, b) = (&w[0].word, &w[1].word);
            assert!(a.len() < b.len() || (a.len() == b.len() && a < b));
        }
        for e in &ball.elements {
            assert!(ball.word_map(&e.word).approx_eq(&e.map, 1e-10));
        }
    }

    #[test]
    fn translation_orbit_of_unit_circle() {
        let ball = enumerate_group(&[MoebiusMap::translation(c(2.0, 0.0))], 3, 100).unwrap();
        let orbit = orbit_of_circle(&GeneralizedCircle::unit_circle(), &ball);
        assert_eq!(orbit.entries.len(), 7);
        let mut centers: Vec<f64> = orbit.entries.iter().map(|e| e.circle.center_radius().unwrap().0.re).collect();
        centers.sort_by(f64::total_cmp);
        for (x, want) in centers.iter().zip([-6.0, -4.0, -2.0, 0.0, 2.0, 4.0, 6.0]) {
            assert!((x - want).abs() < 1e-12);
        }
        let only = orbit_of_circle(&GeneralizedCircle::unit_circle(), &GroupBall::identity_only());
        assert_eq!(only.entries.len(), 1);
        let report = discreteness_report(&only, &HyperbolicPoint::origin(), 1.0).unwrap();
        assert_eq!(report.verdict, DiscretenessVerdict::LooksDiscrete { gap: None });
    }

    #[test]
    fn stabilizers() {
        let unit = GeneralizedCircle::unit_circle();
        let inv = inversion_in_circle(&unit);
        let ball = enumerate_group(&[inv, loxodromics()[0]], 2, 1000).unwrap();
        let stab = stabilizer_search(&unit, &ball);
        assert!(stab.iter().any(|e| e.word.is_empty()));
        assert!(stab.iter().any(|e| e.map.is_anti() && e.word == vec![0]));
        let generic = GeneralizedCircle::circle(c(0.31, 0.17), 0.77).unwrap();
        let ball = enumerate_group(&loxodromics(), 2, 1000).unwrap();
        assert_eq!(stabilizer_search(&generic, &ball).len(), 1);
    }

    #[test]
    fn slopes() {
        let basis = (c(1.0, 0.0), c(0.3, 1.0));
        let sigma = ExtendedComplex::Infinity;
        let along = |w: C64| GeneralizedCircle::line(c(0.2, 0.1), w).unwrap();
        let t = |l: &GeneralizedCircle| rational_slope_test(sigma, basis, l, SLOPE_DENOMINATOR_BOUND, 1e-9).unwrap();
        assert_eq!(t(&along(basis.0)), SlopeVerdict::Rational { p: 0, q: 1 });
        assert_eq!(t(&along(basis.0 + 2.0 * basis.1)), SlopeVerdict::Rational { p: 2, q: 1 });
        assert_eq!(t(&along(basis.0 + 2f64.sqrt() * basis.1)), SlopeVerdict::IrrationalAtTolerance);
        assert_eq!(t(&GeneralizedCircle::unit_circle()), SlopeVerdict::NotThroughSigma);
        assert!(rational_slope_test(sigma, (c(1.0, 0.0), c(2.0, 0.0)), &along(basis.0), 10, 1e-9).is_err());
    }

    #[test]
    fn annulus_samples_stay_in_the_annulus() {
        let base = GeneralizedCircle::circle(c(0.2, -0.4), 0.6).unwrap();
        for d in annulus_samples(&base, 1e-2, 200, 3).unwrap() {
            assert!(crate::circlespace::annulus_contains(&d, &base, 1e-2).unwrap());
        }
    }

    #[test]
    fn trend_verdicts() {
        assert!(matches!(trend_verdict(&[Some(0.3), Some(0.3), Some(0.29)]), DiscretenessVerdict::LooksDiscrete { .. }));
        assert!(matches!(trend_verdict(&[Some(0.4), Some(0.1), Some(0.01)]), DiscretenessVerdict::Accumulating { .. }));
    }
}
