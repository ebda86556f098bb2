//! Return-time sets stored by their gaps, K-thickness, and the experiments
//! around horocycle recurrence: the angles table for the circles C_n, the
//! symmetrization windows and the cusp excursion probe.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circlespace::{angle_between, CircleFrame, GeneralizedCircle};
use crate::error::{Error, Result};
use crate::halfspace::{dist_geodesics, height_of, highest_point, Geodesic, HeightChart};
use crate::moebius::{ExtendedComplex, HyperbolicPoint, MoebiusMap, C64};
use crate::orbits::GroupBall;
use crate::packing::{arc_decomposition, double_horocycle_at, CirclePacking};

const TWO_PI: f64 = 2.0 * PI;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ambient {
    #[default]
    RealLine,
    /// Angle parameter on a circle; gaps are arcs (start, end) with start in
    /// [0, 2 pi) and end - start at most 2 pi.
    Circle,
}

/// A closed set T stored through the open gaps of its complement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapSet {
    #[serde(default)]
    pub ambient: Ambient,
    /// Validity window; for circles always [0, 2 pi].
    pub window: [f64; 2],
    /// Scale below which the set is not resolved; witnesses must exceed it.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub floor: f64,
    pub gaps: Vec<[f64; 2]>,
    /// Circle only: the arcs cover everything, so T is empty.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub covered: bool,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

/// Union of sorted open intervals. Intervals overlapping by less than
/// `snap * (1 + |x|)` share a boundary point instead of merging.
fn merge_sorted(sorted: impl IntoIterator<Item = [f64; 2]>, snap: f64) -> Vec<[f64; 2]> {
    let mut out: Vec<[f64; 2]> = Vec::new();
    for [s, e] in sorted {
        if let Some(last) = out.last_mut() {
            let slack = snap * (1.0 + s.abs());
            if s < last[1] - slack {
                last[1] = last[1].max(e);
                continue;
            }
            if s < last[1] {
                let m = 0.5 * (s + last[1]);
                last[1] = m;
                out.push([m, e.max(m)]);
                continue;
            }
        }
        out.push([s, e]);
    }
    out
}

fn sort_by_start(v: &mut [[f64; 2]]) {
    v.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Thickness {
    ThickOnWindow { k: f64 },
    /// `witness` lies in the open witness set; `infimum` is its infimum.
    NotThick { k: f64, infimum: f64, witness: f64 },
}

impl Thickness {
    pub fn is_thick(&self) -> bool {
        matches!(self, Thickness::ThickOnWindow { .. })
    }
}

impl GapSet {
    /// Gap set on the window [lo, hi]; gaps are clipped to it and merged.
    pub fn new(window: [f64; 2], gaps: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        Self::with_snap(window, gaps, 0.0)
    }

    pub(crate) fn with_snap(
        window: [f64; 2],
        gaps: impl IntoIterator<Item = (f64, f64)>,
        snap: f64,
    ) -> Result<Self> {
        let [lo, hi] = window;
        if !(lo < hi) {
            return Err(Error::Domain(format!("empty window [{lo}, {hi}]")));
        }
        let mut clipped: Vec<[f64; 2]> = gaps
            .into_iter()
            .map(|(a, b)| [a.max(lo), b.min(hi)])
            .filter(|[a, b]| a < b)
            .collect();
        sort_by_start(&mut clipped);
        Ok(GapSet { ambient: Ambient::RealLine, window, floor: 0.0, gaps: merge_sorted(clipped, snap), covered: false })
    }

    pub fn with_floor(mut self, floor: f64) -> Self {
        self.floor = floor;
        self
    }

    /// Arc set on a circle from (start, length) pairs.
    pub fn circle_arcs(arcs: impl IntoIterator<Item = (f64, f64)>, snap: f64) -> Self {
        let mut full = GapSet { ambient: Ambient::Circle, window: [0.0, TWO_PI], floor: 0.0, gaps: vec![], covered: true };
        let mut v = Vec::new();
        for (s, len) in arcs {
            if len >= TWO_PI {
                full.gaps = vec![[0.0, TWO_PI]];
                return full;
            }
            if len > 0.0 {
                let s = s.rem_euclid(TWO_PI);
                v.push([s, s + len]);
            }
        }
        sort_by_start(&mut v);
        let mut out = merge_sorted(v, snap);
        // Close up across the seam.
        while out.len() >= 2 {
            let first = out[0];
            let (fs, fe) = (first[0] + TWO_PI, first[1] + TWO_PI);
            let n = out.len();
            let last = &mut out[n - 1];
            if fs < last[1] - snap {
                last[1] = last[1].max(fe);
                out.remove(0);
                continue;
            }
            if fs < last[1] {
                let m = 0.5 * (fs + last[1]);
                out[0][0] = (m - TWO_PI).max(0.0);
                out[n - 1][1] = out[0][0] + TWO_PI;
            }
            break;
        }
        if let [[s, e]] = out[..] {
            if e - s > TWO_PI + snap {
                full.gaps = vec![[0.0, TWO_PI]];
                return full;
            }
            if e - s >= TWO_PI - snap {
                out[0][1] = s + TWO_PI;
            }
        }
        GapSet { ambient: Ambient::Circle, window: [0.0, TWO_PI], floor: 0.0, gaps: out, covered: false }
    }

    pub fn is_line(&self) -> bool {
        self.ambient == Ambient::RealLine
    }

    /// Whether t lies in an open gap.
    pub fn in_gap(&self, t: f64) -> bool {
        match self.ambient {
            Ambient::RealLine => {
                let i = self.gaps.partition_point(|g| g[0] < t);
                i > 0 && t < self.gaps[i - 1][1]
            }
            Ambient::Circle => {
                self.covered
                    || self.gaps.iter().any(|[s, e]| {
                        let d = (t - s).rem_euclid(TWO_PI);
                        d > 0.0 && d < e - s
                    })
            }
        }
    }

    /// Membership in T (within the window for the real line).
    pub fn contains(&self, t: f64) -> bool {
        match self.ambient {
            Ambient::RealLine => t >= self.window[0] && t <= self.window[1] && !self.in_gap(t),
            Ambient::Circle => !self.in_gap(t),
        }
    }

    /// Closed pieces [a, b] of T, in order; a == b for isolated points.
    pub fn complement_pieces(&self) -> Vec<[f64; 2]> {
        match self.ambient {
            Ambient::RealLine => {
                let [lo, hi] = self.window;
                let mut out = Vec::new();
                let mut cursor = lo;
                let mut open_left = false;
                for &[a, b] in &self.gaps {
                    if a > cursor || (a == cursor && open_left) {
                        out.push([cursor, a]);
                    }
                    cursor = b;
                    open_left = true;
                }
                if cursor < hi || (cursor == hi && self.gaps.last().is_none_or(|g| g[1] < hi)) {
                    out.push([cursor, hi]);
                }
                out
            }
            Ambient::Circle => {
                if self.covered {
                    return vec![];
                }
                if self.gaps.is_empty() {
                    return vec![[0.0, TWO_PI]];
                }
                let n = self.gaps.len();
                (0..n)
                    .map(|i| {
                        let end = self.gaps[i][1];
                        let next = if i + 1 < n { self.gaps[i + 1][0] } else { self.gaps[0][0] + TWO_PI };
                        let start = end.rem_euclid(TWO_PI);
                        [start, start + (next - end).max(0.0)]
                    })
                    .collect()
            }
        }
    }

    /// Total length of T.
    pub fn measure(&self) -> f64 {
        self.complement_pieces().iter().map(|[a, b]| b - a).sum()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Domain(format!("invalid gap set: {msg}")));
        let [lo, hi] = self.window;
        if !(lo < hi) {
            return bad(format!("window [{lo}, {hi}]"));
        }
        for (i, &[a, b]) in self.gaps.iter().enumerate() {
            if !(a < b) {
                return bad(format!("empty gap ({a}, {b})"));
            }
            if i > 0 && a < self.gaps[i - 1][1] {
                return bad(format!("gaps {} and {i} overlap", i - 1));
            }
            match self.ambient {
                Ambient::RealLine if a < lo || b > hi => return bad(format!("gap ({a}, {b}) leaves the window")),
                Ambient::Circle if !(0.0..TWO_PI).contains(&a) || b - a > TWO_PI => {
                    return bad(format!("arc ({a}, {b}) is not normalized"))
                }
                _ => {}
            }
        }
        if self.ambient == Ambient::Circle && self.gaps.len() >= 2 {
            let (first, last) = (self.gaps[0], self.gaps[self.gaps.len() - 1]);
            if last[1] > first[0] + TWO_PI {
                return bad("arcs overlap across the seam".into());
            }
        }
        Ok(())
    }

    fn require_line(&self) -> Result<()> {
        if self.is_line() {
            Ok(())
        } else {
            Err(Error::Domain("operation needs a real-line gap set".into()))
        }
    }

    /// T1 ∪ T2 on the common window: gaps are pairwise intersections.
    pub fn union(&self, other: &GapSet) -> Result<GapSet> {
        self.require_line()?;
        other.require_line()?;
        let window = [self.window[0].max(other.window[0]), self.window[1].min(other.window[1])];
        let mut gaps = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.gaps.len() && j < other.gaps.len() {
            let (a, b) = (self.gaps[i], other.gaps[j]);
            let (s, e) = (a[0].max(b[0]), a[1].min(b[1]));
            if s < e {
                gaps.push((s, e));
            }
            if a[1] < b[1] {
                i += 1;
            } else {
                j += 1;
            }
        }
        Ok(GapSet::new(window, gaps)?.with_floor(self.floor.max(other.floor)))
    }

    /// T1 ∩ T2 on the common window: gaps are merged.
    pub fn intersection(&self, other: &GapSet) -> Result<GapSet> {
        self.require_line()?;
        other.require_line()?;
        let window = [self.window[0].max(other.window[0]), self.window[1].min(other.window[1])];
        let gaps = self.gaps.iter().chain(&other.gaps).map(|g| (g[0], g[1]));
        Ok(GapSet::new(window, gaps)?.with_floor(self.floor.max(other.floor)))
    }

    /// The closure of the complement: gaps become the interiors of the pieces of T.
    pub fn complement(&self) -> Result<GapSet> {
        self.require_line()?;
        let pieces = self.complement_pieces();
        Ok(GapSet::new(self.window, pieces.into_iter().map(|[a, b]| (a, b)))?.with_floor(self.floor))
    }

    /// Whether both [t, Kt] and [-Kt, -t] lie inside gaps.
    pub fn window_misses(&self, t: f64, k: f64) -> bool {
        let inside = |a: f64, b: f64| {
            let i = self.gaps.partition_point(|g| g[0] < a);
            i > 0 && b < self.gaps[i - 1][1]
        };
        t > self.floor && inside(t, k * t) && inside(-k * t, -t)
    }

    /// Open set of t > floor with T ∩ ([-Kt, -t] ∪ [t, Kt]) empty, as sorted
    /// disjoint intervals.
    pub fn witness_set(&self, k: f64) -> Vec<[f64; 2]> {
        let positive: Vec<[f64; 2]> = self
            .gaps
            .iter()
            .filter(|g| g[1] > 0.0)
            .map(|g| [g[0].max(0.0), g[1] / k])
            .filter(|[a, b]| a < b)
            .collect();
        let mut negative: Vec<[f64; 2]> = self
            .gaps
            .iter()
            .filter(|g| g[0] < 0.0)
            .map(|g| [(-g[1]).max(0.0), -g[0] / k])
            .filter(|[a, b]| a < b)
            .collect();
        negative.reverse();
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < positive.len() && j < negative.len() {
            let (p, n) = (positive[i], negative[j]);
            let s = p[0].max(n[0]).max(self.floor);
            let e = p[1].min(n[1]);
            if s < e {
                out.push([s, e]);
            }
            if p[1] < n[1] {
                i += 1;
            } else {
                j += 1;
            }
        }
        out
    }

    pub fn k_thick_test(&self, k: f64) -> Result<Thickness> {
        self.require_line()?;
        if !(k > 1.0) {
            return Err(Error::Domain(format!("K must exceed 1, got {k}")));
        }
        Ok(match self.witness_set(k).first() {
            None => Thickness::ThickOnWindow { k },
            Some(&[a, b]) => {
                let witness = if a > 0.0 && a * k < b { a * k } else { 0.5 * (a + b) };
                Thickness::NotThick { k, infimum: a, witness }
            }
        })
    }

    /// Smallest K at which the set is thick on the window, or `None` when it
    /// is not thick even at `k_max`.
    pub fn max_thickness(&self, k_max: f64) -> Result<Option<f64>> {
        let k_min = 1.0 + 1e-6;
        if !self.k_thick_test(k_max)?.is_thick() {
            return Ok(None);
        }
        if self.k_thick_test(k_min)?.is_thick() {
            return Ok(Some(k_min));
        }
        let (mut lo, mut hi) = (k_min.ln(), k_max.ln());
        while hi - lo > 1e-13 * hi.abs().max(1.0) {
            let mid = 0.5 * (lo + hi);
            if self.k_thick_test(mid.exp())?.is_thick() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(Some(hi.exp()))
    }
}

pub fn k_thick_test(t: &GapSet, k: f64) -> Result<Thickness> {
    t.k_thick_test(k)
}

/// Default upper end of the search in [`max_thickness`].
pub const K_SEARCH_MAX: f64 = 1e6;

pub fn max_thickness(t: &GapSet) -> Result<Option<f64>> {
    t.max_thickness(K_SEARCH_MAX)
}

/// A circle with the backward and forward endpoints of a geodesic tangent to it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameSpec {
    pub circle: GeneralizedCircle,
    pub x_minus: ExtendedComplex,
    pub x_plus: ExtendedComplex,
}

impl FrameSpec {
    pub fn new(circle: GeneralizedCircle, x_minus: ExtendedComplex, x_plus: ExtendedComplex) -> Result<Self> {
        let frame = FrameSpec { circle, x_minus, x_plus };
        frame.validate()?;
        Ok(frame)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("x_minus", self.x_minus), ("x_plus", self.x_plus)] {
            if !self.circle.contains_point(p, 1e-8) {
                return Err(Error::Domain(format!("{name} = {p} is off the circle")));
            }
        }
        if self.x_minus.chordal_distance(&self.x_plus) <= 1e-8 {
            return Err(Error::Domain("x_minus and x_plus coincide".into()));
        }
        Ok(())
    }

    /// Midpoint of the arc from x_plus to x_minus in the canonical orientation.
    pub fn base_point(&self) -> ExtendedComplex {
        let frame = CircleFrame::new(&self.circle);
        let (tp, tm) = (frame.angle_of(self.x_plus), frame.angle_of(self.x_minus));
        frame.point(tp + 0.5 * (tm - tp).rem_euclid(TWO_PI))
    }

    /// The map with x_plus -> 0, base point -> 1, x_minus -> infinity; it
    /// sends the circle to the extended real line.
    pub fn normalization(&self) -> Result<MoebiusMap> {
        MoebiusMap::three_point(self.x_plus, self.base_point(), self.x_minus)
    }
}

/// Images within this of 0 are the forward endpoint itself.
const ORIGIN_SNAP: f64 = 1e-12;

fn real_image(g: &MoebiusMap, p: ExtendedComplex) -> Option<f64> {
    g.apply(p).finite().map(|z| if z.re.abs() < ORIGIN_SNAP { 0.0 } else { z.re })
}

/// Return times of the frame, over-approximated by the packing depth: the
/// gaps are the normalized images of the arcs of the circle inside the disks.
pub fn return_time_set(x: &FrameSpec, packing: &CirclePacking, t_max: f64) -> Result<GapSet> {
    x.validate()?;
    let g = x.normalization()?;
    let frame = CircleFrame::new(&x.circle);
    let far = 2.0 * t_max;
    let clamp = |v: Option<f64>, toward: f64| v.unwrap_or(toward).clamp(-far, far);
    let mut gaps = Vec::new();
    for arc in arc_decomposition(&x.circle, packing).arcs {
        if arc.half_width >= PI {
            gaps.push((-far, far));
            continue;
        }
        let f1 = real_image(&g, frame.point(arc.center - arc.half_width));
        let f2 = real_image(&g, frame.point(arc.center + arc.half_width));
        let fm = real_image(&g, frame.point(arc.center));
        match (f1, f2, fm) {
            (Some(a), Some(b), Some(m)) => {
                let (lo, hi) = (a.min(b), a.max(b));
                if lo < m && m < hi {
                    gaps.push((lo, hi));
                } else {
                    gaps.push((hi, far));
                    gaps.push((-far, lo));
                }
            }
            (_, _, None) => {
                let (lo, hi) = (clamp(f1, far).min(clamp(f2, far)), clamp(f1, -far).max(clamp(f2, -far)));
                gaps.push((hi, far));
                gaps.push((-far, lo));
            }
            (None, Some(b), Some(m)) | (Some(b), None, Some(m)) => {
                if m < b {
                    gaps.push((-far, b));
                } else {
                    gaps.push((b, far));
                }
            }
            (None, None, Some(_)) => gaps.push((-far, far)),
        }
    }
    GapSet::with_snap([-t_max, t_max], gaps, 1e-9)
}

/// Trend check for a quantity tending to zero: the last-decile mean is
/// `factor` times below the first-decile mean and the final value is below
/// `threshold`.
pub fn trend_to_zero(values: &[f64], factor: f64, threshold: f64) -> bool {
    let (first, last) = decile_means(values);
    last * factor <= first && values.last().is_some_and(|v| *v < threshold)
}

/// Trend check for a quantity tending to infinity.
pub fn trend_to_infinity(values: &[f64], factor: f64, threshold: f64) -> bool {
    let (first, last) = decile_means(values);
    last >= factor * first && values.last().is_some_and(|v| *v > threshold)
}

pub fn decile_means(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let m = (values.len() / 10).max(1);
    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
    (mean(&values[..m]), mean(&values[values.len() - m..]))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnglesRow {
    pub n: usize,
    pub theta: f64,
    /// 2a/n, the predicted cosine of the angle.
    pub predicted_cos: f64,
    /// |u_n - v_n|.
    pub chord: f64,
    /// Height of the apex of l(u_n, v_n).
    pub apex_height: f64,
    pub d: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkippedRow {
    pub n: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnglesTable {
    pub lambda0: ExtendedComplex,
    /// Distance from lambda0 to the first line.
    pub a: f64,
    pub rows: Vec<AnglesRow>,
    pub skipped: Vec<SkippedRow>,
}

impl AnglesTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,theta,chord,d\n");
        for r in &self.rows {
            out.push_str(&format!("{},{:.17e},{:.17e},{:.17e}\n", r.n, r.theta, r.chord, r.d));
        }
        out
    }
}

/// Unit direction of a line, normalized to point right (or up).
fn line_direction(line: &GeneralizedCircle) -> C64 {
    let dir = C64::new(0.0, -1.0) * line.b / line.b.norm();
    if dir.re < -1e-15 || (dir.re.abs() <= 1e-15 && dir.im < 0.0) {
        -dir
    } else {
        dir
    }
}

/// Crossings of a Euclidean circle with a line, ordered along the line.
fn line_circle_crossings(line: &GeneralizedCircle, center: C64, r: f64) -> Option<(C64, C64)> {
    let dir = line_direction(line);
    let unit_b = line.b / line.b.norm();
    let foot = -0.5 * line.c / line.b.norm() * unit_b;
    let rel = foot - center;
    let half_b = (dir.conj() * rel).re;
    let disc = half_b * half_b - (rel.norm_sqr() - r * r);
    if disc <= 0.0 {
        return None;
    }
    let root = disc.sqrt();
    // Cancellation-free pair of roots.
    let s1 = -half_b - root.copysign(half_b);
    let s2 = (rel.norm_sqr() - r * r) / s1;
    let (s1, s2) = if s1 < s2 { (s1, s2) } else { (s2, s1) };
    Some((foot + dir * s1, foot + dir * s2))
}

/// The circles C_n through lambda0 and lambda0 + n along the cusp's double
/// horocycle lines, their angle with the first line, and the distance between
/// the geodesics spanned by their crossings with the two lines.
pub fn angles_experiment(
    packing: &CirclePacking,
    lambda0: ExtendedComplex,
    n_range: std::ops::RangeInclusive<usize>,
) -> Result<AnglesTable> {
    let sigma = packing
        .tangencies
        .iter()
        .find(|t| t.point.is_infinite())
        .ok_or_else(|| Error::Domain("packing has no cusp at infinity".into()))?;
    let (l1, l2) = double_horocycle_at(sigma, packing)?;
    let z0 = lambda0.finite().ok_or_else(|| Error::Domain("lambda0 must be finite".into()))?;
    let a = 0.5 * l1.eval(z0).abs() / l1.b.norm();
    let dir = line_direction(&l1);
    let results: Vec<std::result::Result<AnglesRow, SkippedRow>> = n_range
        .into_par_iter()
        .map(|n| {
            let r = 0.5 * n as f64;
            let center = z0 + dir * r;
            let skip = |reason: &str| SkippedRow { n, reason: reason.into() };
            let c_n = GeneralizedCircle::circle(center, r).map_err(|e| skip(&e.to_string()))?;
            let (u, v) = line_circle_crossings(&l1, center, r).ok_or_else(|| skip("C_n misses the first line"))?;
            let (w, z) = line_circle_crossings(&l2, center, r).ok_or_else(|| skip("C_n misses the second line"))?;
            let theta = angle_between(&c_n, &l1).map_err(|e| skip(&e.to_string()))?;
            let luv = Geodesic::between(u, v).map_err(|e| skip(&e.to_string()))?;
            let lwz = Geodesic::between(w, z).map_err(|e| skip(&e.to_string()))?;
            let apex_height = highest_point(&luv).map_err(|e| skip(&e.to_string()))?.t;
            Ok(AnglesRow {
                n,
                theta,
                predicted_cos: 2.0 * a / n as f64,
                chord: (u - v).norm(),
                apex_height,
                d: dist_geodesics(&luv, &lwz),
            })
        })
        .collect();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(s) => skipped.push(s),
        }
    }
    Ok(AnglesTable { lambda0, a, rows, skipped })
}

/// Endpoint quadruple in normalized coordinates: the gaps are (u, v) and (z, w).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quadruple {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub z: f64,
}

impl Quadruple {
    pub fn check_signs(&self) -> Result<()> {
        let Quadruple { u, v, w, z } = *self;
        let checks = [
            (v >= u, "v >= u"),
            (u > 0.0, "u > 0"),
            (w < 0.0, "0 > w"),
            (w > z, "w > z"),
            (w.abs() >= u, "|w| >= u"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, name)) => Err(Error::SignPattern(format!("{name} fails for {self:?}"))),
            None => Ok(()),
        }
    }

    /// The two gaps as a gap set on a window wide enough to hold them.
    pub fn gap_set(&self) -> Result<GapSet> {
        let reach = 2.0 * self.v.abs().max(self.z.abs()).max(1.0);
        GapSet::new([-reach, reach], [(self.u, self.v), (self.z, self.w)])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KWitness {
    pub k: f64,
    pub t: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadrupleReport {
    pub quadruple: Quadruple,
    /// (v - w) / (u - w).
    pub ratio: f64,
    /// |w|: the infimum of admissible windows.
    pub t: f64,
    /// Supremum of K with both K-windows inside the gaps.
    pub k_sup: f64,
    pub witnesses: Vec<KWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetrizationReport {
    pub frame: Option<FrameSpec>,
    pub entries: Vec<QuadrupleReport>,
}

impl SymmetrizationReport {
    /// A witness t for K, from the first quadruple that defeats K.
    pub fn witness_for(&self, k: f64) -> Option<(usize, f64)> {
        self.entries.iter().enumerate().find_map(|(i, e)| {
            e.witnesses.iter().find(|w| w.k == k).map(|w| (i, w.t))
        })
    }
}

/// Window algebra of the symmetrization step: [t, Kt] ⊂ (u, v) and
/// [-Kt, -t] ⊂ (z, w) hold for |w| < t < min(v, |z|)/K.
pub fn symmetrization_ratios(
    x: Option<&FrameSpec>,
    configs: &[Quadruple],
    ks: &[f64],
) -> Result<SymmetrizationReport> {
    if let Some(x) = x {
        x.validate()?;
    }
    let mut entries = Vec::new();
    for q in configs {
        q.check_signs()?;
        let t = q.w.abs();
        let k_sup = q.v.min(q.z.abs()) / t;
        let witnesses = ks
            .iter()
            .filter(|&&k| k < k_sup)
            .map(|&k| KWitness { k, t: t * (k_sup / k).sqrt() })
            .collect();
        entries.push(QuadrupleReport { quadruple: *q, ratio: (q.v - q.w) / (q.u - q.w), t, k_sup, witnesses });
    }
    Ok(SymmetrizationReport { frame: x.copied(), entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExcursionTrend {
    Growing,
    Bounded,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExcursionSample {
    pub t: f64,
    pub height: f64,
    pub word: Vec<usize>,
    pub running_max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExcursionTrace {
    pub sigma: ExtendedComplex,
    pub samples: Vec<ExcursionSample>,
    pub trend: ExcursionTrend,
    pub note: String,
}

/// The point at distance t along the geodesic from x_plus toward x_minus,
/// starting above the base point.
pub fn ray_point(x: &FrameSpec, t: f64) -> Result<HyperbolicPoint> {
    let g = x.normalization()?;
    Ok(g.inverse().apply_halfspace(HyperbolicPoint::raw(C64::new(0.0, 0.0), t.exp())))
}

/// Heuristic depth of the ray into the cusp: for each sample time, the
/// largest height over the ball of translates of the ray point.
pub fn cusp_excursion_probe(
    x: &FrameSpec,
    ball: &GroupBall,
    chart: &HeightChart,
    t_samples: &[f64],
) -> Result<ExcursionTrace> {
    x.validate()?;
    let points: Vec<HyperbolicPoint> = t_samples.iter().map(|&t| ray_point(x, t)).collect::<Result<_>>()?;
    let best: Vec<(f64, Vec<usize>)> = points
        .par_iter()
        .map(|p| {
            ball.elements
                .iter()
                .map(|e| (height_of(&e.map.apply_halfspace(*p), chart), &e.word))
                .fold((f64::NEG_INFINITY, None), |acc, (h, w)| if h > acc.0 { (h, Some(w)) } else { acc })
        })
        .map(|(h, w)| (h, w.cloned().unwrap_or_default()))
        .collect();
    let mut running = f64::NEG_INFINITY;
    let samples: Vec<ExcursionSample> = t_samples
        .iter()
        .zip(best)
        .map(|(&t, (height, word))| {
            running = running.max(height);
            ExcursionSample { t, height, word, running_max: running }
        })
        .collect();
    let maxima: Vec<f64> = samples.iter().map(|s| s.running_max).collect();
    let (first, last) = decile_means(&maxima);
    let trend = if trend_to_infinity(&maxima, 10.0, 0.0) {
        ExcursionTrend::Growing
    } else if last <= 2.0 * first {
        ExcursionTrend::Bounded
    } else {
        ExcursionTrend::Inconclusive
    };
    Ok(ExcursionTrace {
        sigma: chart.sigma,
        samples,
        trend,
        note: "heuristic: finite ball and finite times; not a certificate of unboundedness".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(a: f64, b: f64) -> Vec<(f64, f64)> {
        vec![(-b, -a), (a, b)]
    }

    #[test]
    fn empty_gaps_are_thick() {
        let t = GapSet::new([-1e4, 1e4], vec![]).unwrap();
        for k in [1.01, 2.0, 100.0] {
            assert!(t.k_thick_test(k).unwrap().is_thick());
        }
    }

    #[test]
    fn symmetric_gap_pair() {
        let t = GapSet::new([-1e3, 1e3], sym(1.0, 100.0)).unwrap();
        match t.k_thick_test(2.0).unwrap() {
            Thickness::NotThick { infimum, witness, .. } => {
                assert_eq!(infimum, 1.0);
                assert_eq!(witness, 2.0);
                assert!(t.window_misses(2.0, 2.0));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        assert!(t.k_thick_test(100.0).unwrap().is_thick());
        let threshold = t.max_thickness(1e6).unwrap().unwrap();
        assert!((threshold - 100.0).abs() < 1e-9);
    }

    fn powers_of_two(floor_exp: i32, top_exp: i32) -> GapSet {
        let mut gaps = vec![(-(2f64.powi(floor_exp)), 2f64.powi(floor_exp))];
        for n in floor_exp..top_exp {
            let (a, b) = (2f64.powi(n), 2f64.powi(n + 1));
            gaps.extend(sym(a, b));
        }
        let hi = 2f64.powi(top_exp);
        GapSet::new([-hi, hi], gaps).unwrap().with_floor(2f64.powi(floor_exp))
    }

    #[test]
    fn powers_of_two_threshold() {
        let t = powers_of_two(-10, 12);
        assert!(t.k_thick_test(2.0).unwrap().is_thick());
        assert!(!t.k_thick_test(1.9).unwrap().is_thick());
        // Exhaustive scan over gap endpoints.
        for g in &t.gaps {
            for s in [g[0], g[1]] {
                if s > t.floor && 2.0 * s <= t.window[1] {
                    assert!(!t.window_misses(s, 2.0));
                }
            }
        }
        let threshold = t.max_thickness(1e6).unwrap().unwrap();
        assert!((threshold - 2.0).abs() < 1e-9);
    }

    #[test]
    fn finite_points_are_never_thick() {
        let t = GapSet::new([-10.0, 10.0], vec![(-10.0, -1.0), (-1.0, 3.0), (3.0, 10.0)]).unwrap();
        assert_eq!(t.complement_pieces(), vec![[-1.0, -1.0], [3.0, 3.0]]);
        assert_eq!(t.max_thickness(1e6).unwrap(), None);
    }

    #[test]
    fn circle_arcs_touching_leave_points() {
        let set = GapSet::circle_arcs(vec![(0.0, 2.0), (2.0, 2.0), (4.0, TWO_PI - 4.0)], 1e-9);
        set.validate().unwrap();
        let pieces = set.complement_pieces();
        assert_eq!(pieces.len(), 3);
        assert!(pieces.iter().all(|[a, b]| b - a < 1e-12));
        assert!(set.measure() < 1e-12);
        let all = GapSet::circle_arcs(vec![(1.0, 4.0), (4.0, 4.0)], 1e-9);
        assert!(all.covered && all.complement_pieces().is_empty());
    }

    #[test]
    fn set_algebra_revalidates() {
        let a = GapSet::new([-5.0, 5.0], vec![(-4.0, -1.0), (1.0, 2.0)]).unwrap();
        let b = GapSet::new([-5.0, 5.0], vec![(-2.0, 0.5), (1.5, 4.0)]).unwrap();
        for s in [a.union(&b).unwrap(), a.intersection(&b).unwrap(), a.complement().unwrap()] {
            s.validate().unwrap();
        }
        let u = a.union(&b).unwrap();
        assert_eq!(u.gaps, vec![[-2.0, -1.0], [1.5, 2.0]]);
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.gaps, vec![[-4.0, 0.5], [1.0, 4.0]]);
    }

    #[test]
    fn symmetrization_windows() {
        let q = Quadruple { u: 0.5, v: 10.0, w: -1.0, z: -50.0 };
        let report = symmetrization_ratios(None, &[q], &[2.0, 9.0, 10.0]).unwrap();
        let e = &report.entries[0];
        assert_eq!(e.k_sup, 10.0);
        assert_eq!(e.witnesses.len(), 2);
        let gaps = q.gap_set().unwrap();
        for w in &e.witnesses {
            assert!(gaps.window_misses(w.t, w.k));
        }
        let flat = Quadruple { u: 0.5, v: 0.5, w: -1.0, z: -2.0 };
        let r = symmetrization_ratios(None, &[flat], &[2.0]).unwrap();
        assert!(r.entries[0].witnesses.is_empty());
        let bad = Quadruple { u: 2.0, v: 3.0, w: -1.0, z: -2.0 };
        assert!(matches!(symmetrization_ratios(None, &[bad], &[2.0]), Err(Error::SignPattern(_))));
    }

    #[test]
    fn linear_growth_defeats_every_k() {
        let configs: Vec<Quadruple> =
            (2..200).map(|n| Quadruple { u: 0.5, v: n as f64, w: -1.0, z: -(n as f64) }).collect();
        let report = symmetrization_ratios(None, &configs, &[5.0, 50.0]).unwrap();
        for (i, e) in report.entries.iter().enumerate() {
            let n = (i + 2) as f64;
            assert_eq!(e.witnesses.len(), [5.0, 50.0].iter().filter(|&&k| n > k).count());
        }
    }

    #[test]
    fn trends() {
        let decay: Vec<f64> = (1..=100).map(|n| 1.0 / n as f64).collect();
        assert!(trend_to_zero(&decay, 10.0, 0.02));
        let grow: Vec<f64> = (1..=100).map(|n| (n * n) as f64).collect();
        assert!(trend_to_infinity(&grow, 10.0, 100.0));
    }
}
