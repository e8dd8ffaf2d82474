//! A single Markov chain driven by p-bit group updates.

use rand::Rng as _;

use crate::colouring::GroupPlan;
use crate::model::{ClampMask, EnergyModel, State};
use crate::pbit::pbit_update;
use crate::rng::Rng;

/// Current state, its energy, and scratch space for group updates.
///
/// The energy is tracked incrementally: when variable `k` moves from `a` to
/// `b` its contribution changes by `(a − b)·drive_k`.
#[derive(Debug, Clone)]
pub struct GibbsChain<'m> {
    model: &'m EnergyModel,
    state: State,
    energy: f64,
    drives: Vec<f64>,
}

impl<'m> GibbsChain<'m> {
    /// Starts from `state` with clamps applied.
    pub fn new(model: &'m EnergyModel, clamp: &ClampMask, mut state: State) -> Self {
        assert_eq!(state.len(), model.num_vars(), "state length must match the model");
        clamp.apply(&mut state);
        let energy = model.energy_unchecked(state.as_slice());
        GibbsChain { model, state, energy, drives: Vec::new() }
    }

    /// Uniformly random free variables; clamped ones fixed.
    pub fn random(model: &'m EnergyModel, clamp: &ClampMask, rng: &mut Rng) -> Self {
        let state = State::from_bits((0..model.num_vars()).map(|_| rng.random_range(0..2u8)));
        Self::new(model, clamp, state)
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Replaces the state wholesale (used by replica exchange).
    pub(crate) fn swap_with(&mut self, other: &mut GibbsChain<'m>) {
        std::mem::swap(&mut self.state, &mut other.state);
        std::mem::swap(&mut self.energy, &mut other.energy);
    }

    /// Resample every member of `group` from one frozen snapshot.
    ///
    /// All drives are read before any bit is written. Uniform draws are taken
    /// in group order.
    pub fn update_group(&mut self, group: &[u32], beta: f64, rng: &mut Rng) {
        let s = self.state.as_slice();
        self.drives.clear();
        self.drives.extend(group.iter().map(|&k| self.model.drive_unchecked(s, k as usize)));
        let bits = self.state.as_mut_slice();
        for (&k, &drive) in group.iter().zip(&self.drives) {
            let k = k as usize;
            let new = pbit_update(drive, beta, rng.random::<f64>());
            let old = bits[k];
            if new != old {
                self.energy += (old as f64 - new as f64) * drive;
                bits[k] = new;
            }
        }
    }

    /// Recomputes the energy from scratch and returns the drift removed.
    pub fn resync_energy(&mut self) -> f64 {
        let exact = self.model.energy_unchecked(self.state.as_slice());
        let drift = self.energy - exact;
        self.energy = exact;
        drift
    }
}

/// How the group updated at each iteration is picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupSelection {
    /// Uniform with replacement.
    #[default]
    Random,
    /// Cycle through groups in plan order.
    RoundRobin,
}

impl GroupSelection {
    pub(crate) fn pick(self, plan: &GroupPlan, iteration: u64, rng: &mut Rng) -> usize {
        match self {
            GroupSelection::Random => rng.random_range(0..plan.num_groups()),
            GroupSelection::RoundRobin => (iteration % plan.num_groups() as u64) as usize,
        }
    }
}
