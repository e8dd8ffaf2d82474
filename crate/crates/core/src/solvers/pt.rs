use rand::Rng as _;
use rayon::prelude::*;

use super::chain::{GibbsChain, GroupSelection};
use super::config::PtConfig;
use super::result::{RepeatResult, SolveResult, Tracker};
use super::{check_inputs, RESYNC_EVERY};
use crate::colouring::GroupPlan;
use crate::error::Result;
use crate::model::{ClampMask, EnergyModel};
use crate::rng::{self, tag, Rng};

/// `min{1, exp(Δβ·ΔE)}`.
pub fn metropolis_swap_prob(delta_beta: f64, delta_e: f64) -> f64 {
    let x = delta_beta * delta_e;
    if x >= 0.0 {
        1.0
    } else {
        x.exp()
    }
}

/// A ladder of chains at fixed inverse temperatures with adjacent swaps.
#[derive(Debug, Clone)]
pub struct ReplicaExchange<'m> {
    betas: Vec<f64>,
    chains: Vec<GibbsChain<'m>>,
    rngs: Vec<Rng>,
    swap_rng: Rng,
    proposed: Vec<u64>,
    accepted: Vec<u64>,
}

impl<'m> ReplicaExchange<'m> {
    /// Replica `p` starts from its own random state and draws from its own
    /// stream; swap decisions use a separate stream.
    pub fn new(model: &'m EnergyModel, clamp: &ClampMask, betas: Vec<f64>, seed: u64) -> Self {
        let p = betas.len();
        let chains = (0..p)
            .map(|i| GibbsChain::random(model, clamp, &mut rng::stream(seed, &[tag::INIT, i as u64])))
            .collect();
        ReplicaExchange {
            betas,
            chains,
            rngs: (0..p).map(|i| rng::stream(seed, &[tag::REPLICA, i as u64])).collect(),
            swap_rng: rng::stream(seed, &[tag::SWAP]),
            proposed: vec![0; p.saturating_sub(1)],
            accepted: vec![0; p.saturating_sub(1)],
        }
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn chains(&self) -> &[GibbsChain<'m>] {
        &self.chains
    }

    /// One group update in every replica.
    pub fn iterate(&mut self, plan: &GroupPlan, selection: GroupSelection, iteration: u64) {
        for ((chain, r), &beta) in self.chains.iter_mut().zip(&mut self.rngs).zip(&self.betas) {
            let g = selection.pick(plan, iteration, r);
            chain.update_group(&plan.groups()[g], beta, r);
        }
    }

    /// Proposes swaps for pairs (0,1), (1,2), … in order.
    pub fn swap_sweep(&mut self) {
        for i in 0..self.chains.len().saturating_sub(1) {
            let db = self.betas[i + 1] - self.betas[i];
            let de = self.chains[i + 1].energy() - self.chains[i].energy();
            let u: f64 = self.swap_rng.random();
            self.proposed[i] += 1;
            if u < metropolis_swap_prob(db, de) {
                self.accepted[i] += 1;
                let (lo, hi) = self.chains.split_at_mut(i + 1);
                lo[i].swap_with(&mut hi[0]);
            }
        }
    }

    pub fn swap_acceptance(&self) -> Vec<f64> {
        self.proposed
            .iter()
            .zip(&self.accepted)
            .map(|(&p, &a)| if p == 0 { 0.0 } else { a as f64 / p as f64 })
            .collect()
    }

    fn resync(&mut self) {
        for c in &mut self.chains {
            c.resync_energy();
        }
    }
}

/// Parallel tempering. Replicas sit at fixed β spread over the configured
/// range; every `swap_interval` iterations a swap sweep runs.
pub fn run_pt(model: &EnergyModel, clamp: &ClampMask, plan: &GroupPlan, cfg: &PtConfig) -> Result<SolveResult> {
    cfg.validate()?;
    check_inputs(model, clamp, plan)?;
    let betas = cfg.spacing.schedule(cfg.beta_start, cfg.beta_end, cfg.replicas);
    let repeats: Vec<RepeatResult> =
        (0..cfg.repeats).into_par_iter().map(|r| pt_repeat(model, clamp, plan, cfg, &betas, r)).collect();
    Ok(SolveResult::from_repeats(cfg.seed, cfg.iters as u64, repeats))
}

fn pt_repeat(model: &EnergyModel, clamp: &ClampMask, plan: &GroupPlan, cfg: &PtConfig, betas: &[f64], repeat: usize) -> RepeatResult {
    let seed = rng::derive_seed(cfg.seed, &[tag::REPEAT, repeat as u64]);
    let mut rx = ReplicaExchange::new(model, clamp, betas.to_vec(), seed);
    let lowest = |rx: &ReplicaExchange| {
        rx.chains().iter().enumerate().fold(0, |b, (i, c)| if c.energy() < rx.chains()[b].energy() { i } else { b })
    };
    let start = lowest(&rx);
    let mut tracker = Tracker::new(rx.chains()[start].energy(), rx.chains()[start].state());
    if plan.num_groups() > 0 {
        for it in 1..=cfg.iters as u64 {
            rx.iterate(plan, cfg.selection, it - 1);
            if it % RESYNC_EVERY == 0 {
                rx.resync();
            }
            let b = lowest(&rx);
            tracker.observe(it, rx.chains()[b].energy(), rx.chains()[b].state());
            if it % cfg.swap_interval as u64 == 0 {
                rx.swap_sweep();
            }
        }
    }
    let (_, best_state, trajectory) = tracker.finish(cfg.iters as u64);
    RepeatResult {
        repeat,
        seed,
        best_energy: model.energy_unchecked(best_state.as_slice()),
        best_state,
        trajectory,
        swap_acceptance: rx.swap_acceptance(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::plan_groups;

    #[test]
    fn swap_probabilities() {
        assert_eq!(metropolis_swap_prob(0.0, 123.0), 1.0);
        assert!((metropolis_swap_prob(1.0, -std::f64::consts::LN_2) - 0.5).abs() < 1e-15);
        assert_eq!(metropolis_swap_prob(0.5, 4.0), 1.0);
    }

    #[test]
    fn equal_betas_always_swap() {
        let mut b = EnergyModel::builder(3);
        b.add_term(1.0, [0u32, 1]).unwrap();
        b.add_term(-1.0, [1u32, 2]).unwrap();
        let m = b.build();
        let clamp = ClampMask::all_free(3);
        let plan = plan_groups(&m, &clamp).unwrap();
        let mut rx = ReplicaExchange::new(&m, &clamp, vec![0.7; 4], 5);
        for it in 0..100 {
            rx.iterate(&plan, GroupSelection::Random, it);
            rx.swap_sweep();
        }
        assert_eq!(rx.swap_acceptance(), vec![1.0; 3]);
    }

    #[test]
    fn pt_finds_ground_and_rejects_single_replica() {
        let mut b = EnergyModel::builder(2);
        b.add_term(-4.0, [0u32, 1]).unwrap();
        b.add_term(2.0, [0u32]).unwrap();
        b.add_term(2.0, [1u32]).unwrap();
        let m = b.build();
        let clamp = ClampMask::all_free(2);
        let plan = plan_groups(&m, &clamp).unwrap();
        let res = run_pt(&m, &clamp, &plan, &PtConfig::new(0.5, 5.0, 4, 200, 10, 2, 8)).unwrap();
        assert_eq!(res.best_energy, 0.0);
        assert!(run_pt(&m, &clamp, &plan, &PtConfig::new(0.5, 5.0, 1, 200, 10, 2, 8)).is_err());
    }
}
