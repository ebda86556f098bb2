//! Quick invariant suites behind the `selftest` command.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circlespace::{angle_between, circle_through, covering_phi, Vec3};
use crate::fixtures;
use crate::halfspace::{dist, dist_geodesics, dist_point_geodesic, Geodesic};
use crate::moebius::{ExtendedComplex, HyperbolicPoint, MoebiusMap, C64};
use crate::orbits::{enumerate_group, orbit_of_circle};
use crate::packing::generate_packing;
use crate::recurrence::{return_time_set, GapSet};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }
}

pub fn random_complex(rng: &mut impl Rng, scale: f64) -> C64 {
    C64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

/// A holomorphic map with entries in the unit square and |det| >= 0.1.
pub fn random_map(rng: &mut impl Rng) -> MoebiusMap {
    loop {
        let [a, b, c, d] = [0; 4].map(|_| random_complex(rng, 1.0));
        if (a * d - b * c).norm() >= 0.1 {
            if let Ok(m) = MoebiusMap::holomorphic(a, b, c, d) {
                return m;
            }
        }
    }
}

pub fn random_point(rng: &mut impl Rng) -> HyperbolicPoint {
    HyperbolicPoint::new(random_complex(rng, 1.0), rng.gen_range(0.2..2.0)).expect("positive height")
}

pub fn random_unit_vector(rng: &mut impl Rng) -> Vec3 {
    loop {
        let v: Vec3 = [0; 3].map(|_| rng.gen_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

fn suite(name: &'static str, run: impl FnOnce() -> Result<String, String>) -> SuiteResult {
    match run() {
        Ok(detail) => SuiteResult { name, passed: true, detail },
        Err(detail) => SuiteResult { name, passed: false, detail },
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn isometries(samples: usize, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let g = random_map(&mut rng);
        let (p, q) = (random_point(&mut rng), random_point(&mut rng));
        let d0 = dist(&p, &q);
        let d1 = dist(&g.apply_halfspace(p), &g.apply_halfspace(q));
        let [a, b, c, d] = [0; 4].map(|_| ExtendedComplex::Finite(random_complex(&mut rng, 1.0)));
        let (l1, l2) = (Geodesic::new(a, b).map_err(|e| e.to_string())?, Geodesic::new(c, d).map_err(|e| e.to_string())?);
        let e0 = dist_point_geodesic(&p, &l1);
        let e1 = dist_point_geodesic(&g.apply_halfspace(p), &l1.image(&g));
        let f0 = dist_geodesics(&l1, &l2);
        let f1 = dist_geodesics(&l1.image(&g), &l2.image(&g));
        let c1 = circle_through(a, b, c).map_err(|e| e.to_string())?;
        let c2 = circle_through(a, b, d).map_err(|e| e.to_string())?;
        let h0 = angle_between(&c1, &c2).map_err(|e| e.to_string())?;
        let h1 = angle_between(&crate::circlespace::apply_circle(&g, &c1), &crate::circlespace::apply_circle(&g, &c2))
            .map_err(|e| e.to_string())?;
        let err = [(d0 - d1).abs(), (e0 - e1).abs(), (f0 - f1).abs(), (h0 - h1).abs()]
            .into_iter()
            .fold(0.0, f64::max);
        worst = worst.max(err);
        check(err <= 1e-7, || format!("sample {i}: discrepancy {err:e}"))?;
    }
    Ok(format!("{samples} maps, worst discrepancy {worst:.2e}"))
}

fn covering(samples: usize, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let x = random_unit_vector(&mut rng);
        let r = rng.gen_range(0.01..PI - 0.01);
        let a = covering_phi(x, r).map_err(|e| e.to_string())?;
        let b = covering_phi(x.map(|v| -v), PI - r).map_err(|e| e.to_string())?;
        check(a.approx_eq(&b, 1e-8), || format!("sample {i}: double cover mismatch"))?;
    }
    Ok(format!("{samples} samples"))
}

fn packing() -> Result<String, String> {
    let p = generate_packing(&fixtures::apollonian_spec(3, 1e-3)).map_err(|e| e.to_string())?;
    p.validate().map_err(|e| e.to_string())?;
    let defect = p.max_descartes_defect();
    check(defect <= 1e-9, || format!("Descartes defect {defect:e}"))?;
    Ok(format!("{} disks, {} tangencies, Descartes defect {defect:.1e}", p.disks.len(), p.tangencies.len()))
}

fn thickness() -> Result<String, String> {
    let t = GapSet::new([-1000.0, 1000.0], [(-100.0, -1.0), (1.0, 100.0)]).map_err(|e| e.to_string())?;
    let k = t.max_thickness(1e6).map_err(|e| e.to_string())?;
    check(k.is_some_and(|k| (k - 100.0).abs() < 1e-6), || format!("threshold {k:?}, expected 100"))?;
    let p = generate_packing(&fixtures::apollonian_spec(5, 1e-4)).map_err(|e| e.to_string())?;
    let r = return_time_set(&fixtures::dual_circle_frame(), &p, 1e4).map_err(|e| e.to_string())?;
    let pieces = r.complement_pieces();
    check(pieces.len() == 3 && pieces.iter().all(|[a, b]| a == b), || format!("dual circle return times {pieces:?}"))?;
    check(!r.k_thick_test(2.0).map_err(|e| e.to_string())?.is_thick(), || "dual circle thick at K = 2".into())?;
    Ok("gap pair threshold 100; dual circle return times are 3 points".into())
}

fn orbits() -> Result<String, String> {
    let gens = [
        MoebiusMap::holomorphic(C64::new(2.0, 0.3), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.1))
            .map_err(|e| e.to_string())?,
        MoebiusMap::holomorphic(C64::new(3.0, 0.0), C64::new(0.0, 1.5), C64::new(0.0, -1.0), C64::new(0.2, 0.0))
            .map_err(|e| e.to_string())?,
    ];
    let ball = enumerate_group(&gens, 3, 1000).map_err(|e| e.to_string())?;
    check(ball.len() == 53, || format!("free ball of radius 3 has {} elements", ball.len()))?;
    let shift = enumerate_group(&[MoebiusMap::translation(C64::new(2.0, 0.0))], 3, 100).map_err(|e| e.to_string())?;
    let orbit = orbit_of_circle(&crate::circlespace::GeneralizedCircle::unit_circle(), &shift);
    check(orbit.entries.len() == 7, || format!("translation orbit has {} circles", orbit.entries.len()))?;
    Ok("ball and orbit counts".into())
}

pub fn run_selftest(seed: u64) -> SelftestReport {
    SelftestReport {
        suites: vec![
            suite("isometry", || isometries(200, seed)),
            suite("covering", || covering(200, seed)),
            suite("packing", packing),
            suite("thickness", thickness),
            suite("orbits", orbits),
        ],
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_suites_pass() {
        let report = super::run_selftest(1);
        for s in &report.suites {
            assert!(s.passed, "{}: {}", s.name, s.detail);
        }
    }
}
