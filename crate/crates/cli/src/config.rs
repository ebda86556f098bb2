use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fixture {
    Apollonian,
    Strip,
    DualCircle,
}

/// Experiment settings. Values given on the command line win over a
/// `--config` file, which wins over the defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ExperimentConfig {
    pub fixture: Option<Fixture>,
    pub depth: Option<usize>,
    pub min_radius: Option<f64>,
    pub word_length: Option<usize>,
    /// Geometric tolerance: annulus width in bk-scan, horocycle defect in orbit.
    pub tol: Option<f64>,
    #[serde(rename = "K")]
    pub k: Option<Vec<f64>>,
    pub t_max: Option<f64>,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let config: ExperimentConfig = crate::read_json(path)?;
        config.validate()?;
        Ok(config)
    }

    /// Fields of `over` replace those of `self`.
    pub fn overlay(self, over: ExperimentConfig) -> Self {
        ExperimentConfig {
            fixture: over.fixture.or(self.fixture),
            depth: over.depth.or(self.depth),
            min_radius: over.min_radius.or(self.min_radius),
            word_length: over.word_length.or(self.word_length),
            tol: over.tol.or(self.tol),
            k: over.k.or(self.k),
            t_max: over.t_max.or(self.t_max),
            out: over.out.or(self.out),
            svg: over.svg.or(self.svg),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [("min-radius", self.min_radius), ("tol", self.tol), ("t-max", self.t_max)];
        for (name, v) in positive {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(CliError::Config(format!("{name} must be positive, got {v}")));
                }
            }
        }
        if self.word_length == Some(0) {
            return Err(CliError::Config("word-length must be positive".into()));
        }
        if let Some(ks) = &self.k {
            if ks.is_empty() {
                return Err(CliError::Config("K list is empty".into()));
            }
            if let Some(k) = ks.iter().find(|&&k| !(k > 1.0 && k.is_finite())) {
                return Err(CliError::Config(format!("K values must exceed 1, got {k}")));
            }
        }
        Ok(())
    }

    pub fn fixture_or(&self, default: Fixture) -> Fixture {
        self.fixture.unwrap_or(default)
    }

    pub fn depth_for(&self, fixture: Fixture) -> usize {
        self.depth.unwrap_or(match fixture {
            Fixture::Strip => 3,
            _ => 5,
        })
    }

    pub fn min_radius(&self) -> f64 {
        self.min_radius.unwrap_or(1e-4)
    }

    pub fn word_length(&self) -> usize {
        self.word_length.unwrap_or(4)
    }

    pub fn tol(&self) -> f64 {
        self.tol.unwrap_or(1e-3)
    }

    pub fn k_values(&self) -> Vec<f64> {
        self.k.clone().unwrap_or_else(|| vec![2.0, 10.0, 100.0])
    }

    pub fn t_max(&self) -> f64 {
        self.t_max.unwrap_or(1e4)
    }
}
