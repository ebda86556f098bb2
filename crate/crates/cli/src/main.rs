//! `klab`: packings, orbits, return-time sets and the strip experiments from
//! the command line. Reports are JSON; failures print a JSON error report to
//! stderr and exit nonzero.

mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use klab_core::circlespace::GeneralizedCircle;
use klab_core::fixtures::{self, strip};
use klab_core::moebius::HyperbolicPoint;
use klab_core::orbits::{
    accumulation_detector, bk_scan, discreteness_report, enumerate_group, orbit_of_circle, AccumulationOptions,
    AccumulationVerdict, BkOptions, DiscretenessReport, OrbitRecord, DEFAULT_BUDGET,
};
use klab_core::packing::{generate_packing, CirclePacking, PackingSpec};
use klab_core::recurrence::{angles_experiment, return_time_set, FrameSpec, GapSet, Thickness};
use klab_core::selftest::run_selftest;
use klab_core::svg;

use config::{ExperimentConfig, Fixture};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] klab_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Config(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io { .. } => "io",
            CliError::Json { .. } => "malformed-json",
            CliError::Config(_) => "config",
        }
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    word: Option<&'a [usize]>,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

#[derive(Parser)]
#[command(name = "klab", version, about = "Circle packings, orbits of circles and horocycle return times")]
struct Cli {
    /// JSON experiment config; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    fixture: Option<Fixture>,
    #[arg(long, global = true)]
    depth: Option<usize>,
    #[arg(long, global = true)]
    min_radius: Option<f64>,
    #[arg(long, global = true)]
    word_length: Option<usize>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Thickness constants, comma separated or repeated.
    #[arg(long = "K", global = true, value_delimiter = ',')]
    k: Vec<f64>,
    #[arg(long, global = true)]
    t_max: Option<f64>,
    /// Output file for the report (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

impl Cli {
    fn flags(&self) -> ExperimentConfig {
        ExperimentConfig {
            fixture: self.fixture,
            depth: self.depth,
            min_radius: self.min_radius,
            word_length: self.word_length,
            tol: self.tol,
            k: (!self.k.is_empty()).then(|| self.k.clone()),
            t_max: self.t_max,
            out: self.out.clone(),
            svg: self.svg.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a packing from a fixture or a PackingSpec JSON file.
    GenPacking {
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Orbit of a circle under a word ball, with a discreteness report.
    Orbit {
        #[command(flatten)]
        source: PackingSource,
        /// GeneralizedCircle JSON; defaults to the fixture's circle.
        #[arg(long)]
        circle: Option<PathBuf>,
        /// Radius of the hyperbolic ball about (0, 1) that hulls must meet.
        #[arg(long, default_value_t = 3.0)]
        radius: f64,
    },
    /// Return-time set of a frame and its K-thickness verdicts.
    Thickness {
        #[command(flatten)]
        source: PackingSource,
        /// FrameSpec JSON; defaults to the fixture's frame.
        #[arg(long)]
        frame: Option<PathBuf>,
    },
    /// CSV table of the circles C_n in the strip fixture.
    AnglesDemo {
        #[arg(long, default_value_t = 10)]
        n_min: usize,
        #[arg(long, default_value_t = 10_000)]
        n_max: usize,
    },
    /// Membership and rigidity scan for circles meeting the limit set in k points.
    BkScan {
        #[command(flatten)]
        source: PackingSource,
        /// JSON array of circles; defaults to the fixture's circle.
        #[arg(long)]
        candidates: Option<PathBuf>,
        /// Number of limit-set points a member meets.
        #[arg(long = "k", id = "points", default_value_t = 3)]
        points: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// SVG of a packing, orbit record or orbit report JSON file.
    Render {
        #[arg(long)]
        input: PathBuf,
        /// Packing JSON drawn under an orbit.
        #[arg(long)]
        packing: Option<PathBuf>,
    },
    /// Run the invariant suites.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct PackingSource {
    /// CirclePacking JSON; generated from the fixture when absent.
    #[arg(long)]
    packing: Option<PathBuf>,
}

impl PackingSource {
    fn load(&self, cfg: &ExperimentConfig, fixture: Fixture) -> Result<CirclePacking, CliError> {
        match &self.packing {
            Some(path) => {
                let p: CirclePacking = read_json(path)?;
                p.validate()?;
                Ok(p)
            }
            None => Ok(generate_packing(&fixture_spec(fixture, cfg.depth_for(fixture), cfg.min_radius()))?),
        }
    }
}

fn fixture_spec(fixture: Fixture, depth: usize, min_radius: f64) -> PackingSpec {
    match fixture {
        Fixture::Apollonian | Fixture::DualCircle => fixtures::apollonian_spec(depth, min_radius),
        Fixture::Strip => strip::spec(depth, min_radius),
    }
}

fn fixture_circle(fixture: Fixture) -> GeneralizedCircle {
    match fixture {
        Fixture::Apollonian => fixtures::apollonian_duals()[0],
        Fixture::DualCircle => fixtures::dual_circle(),
        Fixture::Strip => strip::c_n(16.0),
    }
}

fn fixture_frame(fixture: Fixture) -> FrameSpec {
    match fixture {
        Fixture::Apollonian | Fixture::DualCircle => fixtures::dual_circle_frame(),
        Fixture::Strip => strip::frame(16.0),
    }
}

fn emit(cfg: &ExperimentConfig, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => write_text(path, text),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(cfg: &ExperimentConfig, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(klab_core::Error::from)?;
    emit(cfg, &text)
}

fn emit_svg(cfg: &ExperimentConfig, svg: impl FnOnce() -> String) -> Result<(), CliError> {
    match &cfg.svg {
        Some(path) => write_text(path, &svg()),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct OrbitOutput {
    orbit: OrbitRecord,
    discreteness: DiscretenessReport,
    accumulation: AccumulationVerdict,
}

#[derive(Serialize)]
struct ThicknessOutput {
    frame: FrameSpec,
    return_times: GapSet,
    verdicts: Vec<Thickness>,
    /// Smallest K making the set thick, up to the largest K asked for.
    max_thickness: Option<f64>,
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?.overlay(cli.flags()),
        None => cli.flags(),
    };
    cfg.validate()?;
    match &cli.command {
        Command::GenPacking { spec } => {
            let fixture = cfg.fixture_or(Fixture::Apollonian);
            let spec = match spec {
                Some(path) => {
                    let mut s: PackingSpec = read_json(path)?;
                    s.depth = cfg.depth.unwrap_or(s.depth);
                    s.min_radius = cfg.min_radius.unwrap_or(s.min_radius);
                    s
                }
                None => fixture_spec(fixture, cfg.depth_for(fixture), cfg.min_radius()),
            };
            let packing = generate_packing(&spec)?;
            packing.validate()?;
            emit_svg(&cfg, || svg::render_packing(&packing))?;
            emit_json(&cfg, &packing)?;
        }
        Command::Orbit { source, circle, radius } => {
            let fixture = cfg.fixture_or(Fixture::DualCircle);
            let packing = source.load(&cfg, fixture)?;
            let base = match circle {
                Some(path) => read_json(path)?,
                None => fixture_circle(fixture),
            };
            let ball = enumerate_group(&packing.spec.generators, cfg.word_length(), DEFAULT_BUDGET)?;
            let orbit = orbit_of_circle(&base, &ball);
            let discreteness = discreteness_report(&orbit, &HyperbolicPoint::origin(), *radius)?;
            let opts = AccumulationOptions { tol: cfg.tol.unwrap_or(AccumulationOptions::default().tol), ..Default::default() };
            let accumulation = accumulation_detector(&orbit, &packing, &opts);
            emit_svg(&cfg, || svg::render_orbit(&orbit, Some(&packing)))?;
            emit_json(&cfg, &OrbitOutput { orbit, discreteness, accumulation })?;
        }
        Command::Thickness { source, frame } => {
            let fixture = cfg.fixture_or(Fixture::DualCircle);
            let packing = source.load(&cfg, fixture)?;
            let frame = match frame {
                Some(path) => read_json(path)?,
                None => fixture_frame(fixture),
            };
            let ks = cfg.k_values();
            let return_times = return_time_set(&frame, &packing, cfg.t_max())?;
            let verdicts = ks.iter().map(|&k| return_times.k_thick_test(k)).collect::<Result<Vec<_>, _>>()?;
            let k_max = ks.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let max_thickness = return_times.max_thickness(k_max)?;
            emit_json(&cfg, &ThicknessOutput { frame, return_times, verdicts, max_thickness })?;
        }
        Command::AnglesDemo { n_min, n_max } => {
            if n_min > n_max || *n_min == 0 {
                return Err(CliError::Config(format!("need 0 < n-min <= n-max, got {n_min}..{n_max}")));
            }
            let packing = generate_packing(&strip::spec(cfg.depth.unwrap_or(2), cfg.min_radius.unwrap_or(1e-3)))?;
            let table = angles_experiment(&packing, strip::lambda0().into(), *n_min..=*n_max)?;
            for s in &table.skipped {
                eprintln!("skipped n = {}: {}", s.n, s.reason);
            }
            emit(&cfg, table.to_csv().trim_end())?;
        }
        Command::BkScan { source, candidates, points, samples, seed } => {
            let fixture = cfg.fixture_or(Fixture::DualCircle);
            let packing = source.load(&cfg, fixture)?;
            let candidates: Vec<GeneralizedCircle> = match candidates {
                Some(path) => read_json(path)?,
                None => vec![fixture_circle(fixture)],
            };
            let opts = BkOptions {
                eps: cfg.tol(),
                samples: *samples,
                seed: *seed,
                word_length: cfg.word_length.unwrap_or(BkOptions::default().word_length),
            };
            emit_json(&cfg, &bk_scan(&packing, *points, &candidates, &opts)?)?;
        }
        Command::Render { input, packing } => {
            let mut value: serde_json::Value = read_json(input)?;
            // Output of the orbit command wraps the record.
            if let Some(inner) = value.get_mut("orbit") {
                value = inner.take();
            }
            let svg = if value.get("disks").is_some() {
                let p: CirclePacking =
                    serde_json::from_value(value).map_err(|source| CliError::Json { path: input.clone(), source })?;
                p.validate()?;
                svg::render_packing(&p)
            } else {
                let orbit: OrbitRecord =
                    serde_json::from_value(value).map_err(|source| CliError::Json { path: input.clone(), source })?;
                orbit.validate()?;
                let under = packing.as_deref().map(read_json::<CirclePacking>).transpose()?;
                svg::render_orbit(&orbit, under.as_ref())
            };
            match &cfg.svg {
                Some(path) => write_text(path, &svg)?,
                None => emit(&cfg, svg.trim_end())?,
            }
        }
        Command::Selftest { seed } => {
            let report = run_selftest(*seed);
            emit_json(&cfg, &report)?;
            if !report.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("KLAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("KLAB_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn report_error(e: &CliError) {
    let word = match e {
        CliError::Core(klab_core::Error::Invariant { word, .. }) => Some(word.as_slice()),
        _ => None,
    };
    let report = ErrorReport { error: ErrorBody { kind: e.kind(), message: e.to_string(), word } };
    eprintln!("{}", serde_json::to_string(&report).unwrap_or_else(|_| e.to_string()));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(&cli)) {
        Ok(code) => code,
        Err(e) => {
            report_error(&e);
            ExitCode::from(2)
        }
    }
}
