//! Solver settings and their plain-text (TOML) form.
//!
//! ```toml
//! [sa]
//! temp_range = [0.01, 1.1]
//! steps = 100
//! iters = 5
//! reps = 20
//!
//! [pt]
//! temp_range = [0.5, 10.0]
//! iters = 5000
//! swap = 25
//! repls = 20
//! reps = 10
//! ```
//!
//! `temp_range` is an inverse-temperature interval.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::chain::GroupSelection;
use super::schedule::Spacing;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "SaFile", into = "SaFile")]
pub struct SaConfig {
    pub beta_start: f64,
    pub beta_end: f64,
    pub steps: usize,
    pub iters_per_step: usize,
    pub repeats: usize,
    pub seed: u64,
    pub selection: GroupSelection,
}

impl SaConfig {
    pub fn new(beta_start: f64, beta_end: f64, steps: usize, iters_per_step: usize, repeats: usize, seed: u64) -> Self {
        SaConfig { beta_start, beta_end, steps, iters_per_step, repeats, seed, selection: GroupSelection::Random }
    }

    pub fn total_iterations(&self) -> u64 {
        self.steps as u64 * self.iters_per_step as u64
    }

    pub fn validate(&self) -> Result<()> {
        check_betas(self.beta_start, self.beta_end)?;
        if self.steps == 0 || self.iters_per_step == 0 || self.repeats == 0 {
            return Err(Error::Config("steps, iters and reps must all be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "PtFile", into = "PtFile")]
pub struct PtConfig {
    pub beta_start: f64,
    pub beta_end: f64,
    pub replicas: usize,
    pub iters: usize,
    pub swap_interval: usize,
    pub repeats: usize,
    pub seed: u64,
    pub spacing: Spacing,
    pub selection: GroupSelection,
}

impl PtConfig {
    pub fn new(beta_start: f64, beta_end: f64, replicas: usize, iters: usize, swap_interval: usize, repeats: usize, seed: u64) -> Self {
        PtConfig {
            beta_start,
            beta_end,
            replicas,
            iters,
            swap_interval,
            repeats,
            seed,
            spacing: Spacing::Linear,
            selection: GroupSelection::Random,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_betas(self.beta_start, self.beta_end)?;
        if self.replicas < 2 {
            return Err(Error::Config(format!("parallel tempering needs at least 2 replicas, got {}", self.replicas)));
        }
        if self.iters == 0 || self.swap_interval == 0 || self.repeats == 0 {
            return Err(Error::Config("iters, swap and reps must all be at least 1".into()));
        }
        if self.spacing == Spacing::Geometric && self.beta_start <= 0.0 {
            return Err(Error::Config("geometric spacing needs a positive starting beta".into()));
        }
        Ok(())
    }
}

fn check_betas(start: f64, end: f64) -> Result<()> {
    if !(start.is_finite() && end.is_finite() && start >= 0.0 && start <= end) {
        return Err(Error::Config(format!("need 0 <= beta_start <= beta_end, got {start}..{end}")));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SaFile {
    temp_range: [f64; 2],
    steps: usize,
    iters: usize,
    #[serde(default = "one")]
    reps: usize,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    selection: GroupSelection,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PtFile {
    temp_range: [f64; 2],
    iters: usize,
    swap: usize,
    repls: usize,
    #[serde(default = "one")]
    reps: usize,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    spacing: Spacing,
    #[serde(default)]
    selection: GroupSelection,
}

fn one() -> usize {
    1
}

impl From<SaFile> for SaConfig {
    fn from(f: SaFile) -> Self {
        SaConfig {
            beta_start: f.temp_range[0],
            beta_end: f.temp_range[1],
            steps: f.steps,
            iters_per_step: f.iters,
            repeats: f.reps,
            seed: f.seed,
            selection: f.selection,
        }
    }
}

impl From<SaConfig> for SaFile {
    fn from(c: SaConfig) -> Self {
        SaFile {
            temp_range: [c.beta_start, c.beta_end],
            steps: c.steps,
            iters: c.iters_per_step,
            reps: c.repeats,
            seed: c.seed,
            selection: c.selection,
        }
    }
}

impl From<PtFile> for PtConfig {
    fn from(f: PtFile) -> Self {
        PtConfig {
            beta_start: f.temp_range[0],
            beta_end: f.temp_range[1],
            replicas: f.repls,
            iters: f.iters,
            swap_interval: f.swap,
            repeats: f.reps,
            seed: f.seed,
            spacing: f.spacing,
            selection: f.selection,
        }
    }
}

impl From<PtConfig> for PtFile {
    fn from(c: PtConfig) -> Self {
        PtFile {
            temp_range: [c.beta_start, c.beta_end],
            iters: c.iters,
            swap: c.swap_interval,
            repls: c.replicas,
            reps: c.repeats,
            seed: c.seed,
            spacing: c.spacing,
            selection: c.selection,
        }
    }
}

/// A solver config file holds an `[sa]` table, a `[pt]` table, or both.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sa: Option<SaConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pt: Option<PtConfig>,
}

impl SolverFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("solver configs always serialise")
    }
}
