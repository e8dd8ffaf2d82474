use rayon::prelude::*;

use super::chain::GibbsChain;
use super::config::SaConfig;
use super::result::{RepeatResult, SolveResult, Tracker};
use super::schedule::linear_schedule;
use super::{check_inputs, RESYNC_EVERY};
use crate::colouring::GroupPlan;
use crate::error::Result;
use crate::model::{ClampMask, EnergyModel};
use crate::rng::{self, tag};

/// Simulated annealing. β rises linearly over `steps`; each step runs
/// `iters_per_step` group updates.
pub fn run_sa(model: &EnergyModel, clamp: &ClampMask, plan: &GroupPlan, cfg: &SaConfig) -> Result<SolveResult> {
    cfg.validate()?;
    check_inputs(model, clamp, plan)?;
    let betas = linear_schedule(cfg.beta_start, cfg.beta_end, cfg.steps);
    let repeats: Vec<RepeatResult> =
        (0..cfg.repeats).into_par_iter().map(|r| sa_repeat(model, clamp, plan, cfg, &betas, r)).collect();
    Ok(SolveResult::from_repeats(cfg.seed, cfg.total_iterations(), repeats))
}

fn sa_repeat(model: &EnergyModel, clamp: &ClampMask, plan: &GroupPlan, cfg: &SaConfig, betas: &[f64], repeat: usize) -> RepeatResult {
    let seed = rng::derive_seed(cfg.seed, &[tag::REPEAT, repeat as u64]);
    let mut init = rng::stream(seed, &[tag::INIT]);
    let mut r = rng::stream(seed, &[]);
    let mut chain = GibbsChain::random(model, clamp, &mut init);
    let mut tracker = Tracker::new(chain.energy(), chain.state());
    let mut it = 0u64;
    if plan.num_groups() > 0 {
        for &beta in betas {
            for _ in 0..cfg.iters_per_step {
                let g = cfg.selection.pick(plan, it, &mut r);
                chain.update_group(&plan.groups()[g], beta, &mut r);
                it += 1;
                if it.is_multiple_of(RESYNC_EVERY) {
                    chain.resync_energy();
                }
                tracker.observe(it, chain.energy(), chain.state());
            }
        }
    }
    let (_, best_state, trajectory) = tracker.finish(cfg.total_iterations());
    RepeatResult {
        repeat,
        seed,
        best_energy: model.energy_unchecked(best_state.as_slice()),
        best_state,
        trajectory,
        swap_acceptance: Vec::new(),
    }
}
