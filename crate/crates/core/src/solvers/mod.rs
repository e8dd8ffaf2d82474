//! Simulated annealing and parallel tempering driven by group updates.
//!
//! One iteration is one group update. Every repeat draws from its own stream
//! derived from the root seed, so results do not depend on thread count.

mod chain;
mod config;
mod pt;
mod result;
mod sa;
mod schedule;

pub use chain::{GibbsChain, GroupSelection};
pub use config::{PtConfig, SaConfig, SolverFile};
pub use pt::{metropolis_swap_prob, run_pt, ReplicaExchange};
pub use result::{best_at, merge_trajectories, write_trajectory_csv, RepeatResult, SolveResult, TrajectoryPoint};
pub use sa::run_sa;

pub use schedule::{geometric_schedule, linear_schedule, Spacing};

use crate::colouring::GroupPlan;
use crate::error::{Error, Result};
use crate::model::{ClampMask, EnergyModel};

/// Incremental energies are recomputed exactly this often.
const RESYNC_EVERY: u64 = 1 << 16;

fn check_inputs(model: &EnergyModel, clamp: &ClampMask, plan: &GroupPlan) -> Result<()> {
    let n = model.num_vars();
    if clamp.len() != n {
        return Err(Error::Dimension { expected: n, actual: clamp.len() });
    }
    if plan.num_vars() != n {
        return Err(Error::Dimension { expected: n, actual: plan.num_vars() });
    }
    if plan.num_groups() == 0 && clamp.num_free() > 0 {
        return Err(Error::Config("group plan is empty but the model has free variables".into()));
    }
    if plan.num_members() != clamp.num_free() || plan.groups().iter().flatten().any(|&v| !clamp.is_free(v as usize)) {
        return Err(Error::Config("group plan does not cover exactly the free variables".into()));
    }
    Ok(())
}

/// Either solver with its settings.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverConfig {
    Sa(SaConfig),
    Pt(PtConfig),
}

impl SolverConfig {
    pub fn name(&self) -> &'static str {
        match self {
            SolverConfig::Sa(_) => "SA",
            SolverConfig::Pt(_) => "PT",
        }
    }

    pub fn run(&self, model: &EnergyModel, clamp: &ClampMask, plan: &GroupPlan) -> Result<SolveResult> {
        match self {
            SolverConfig::Sa(c) => run_sa(model, clamp, plan, c),
            SolverConfig::Pt(c) => run_pt(model, clamp, plan, c),
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            SolverConfig::Sa(c) => c.seed,
            SolverConfig::Pt(c) => c.seed,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        match self {
            SolverConfig::Sa(c) => SolverConfig::Sa(SaConfig { seed, ..c.clone() }),
            SolverConfig::Pt(c) => SolverConfig::Pt(PtConfig { seed, ..c.clone() }),
        }
    }

    /// Same solver with its iteration budget multiplied by `factor`.
    pub fn scaled_budget(&self, factor: usize) -> Self {
        match self {
            SolverConfig::Sa(c) => SolverConfig::Sa(SaConfig { iters_per_step: c.iters_per_step * factor, ..c.clone() }),
            SolverConfig::Pt(c) => SolverConfig::Pt(PtConfig { iters: c.iters * factor, ..c.clone() }),
        }
    }

    /// Sets the total number of group updates: PT runs `total` iterations,
    /// SA spreads `ceil(total/steps)` over each of its steps.
    pub fn with_total_iterations(&self, total: u64) -> Self {
        let total = total.max(1);
        match self {
            SolverConfig::Sa(c) => SolverConfig::Sa(SaConfig {
                iters_per_step: total.div_ceil(c.steps.max(1) as u64) as usize,
                ..c.clone()
            }),
            SolverConfig::Pt(c) => SolverConfig::Pt(PtConfig { iters: total as usize, ..c.clone() }),
        }
    }

    pub fn total_iterations(&self) -> u64 {
        match self {
            SolverConfig::Sa(c) => c.total_iterations(),
            SolverConfig::Pt(c) => c.iters as u64,
        }
    }
}
