use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::State;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub iteration: u64,
    pub best_energy: f64,
}

/// Best-so-far recorder. Stores a point only when the best strictly improves,
/// plus the start and the final iteration.
#[derive(Debug, Clone)]
pub(crate) struct Tracker {
    pub best_energy: f64,
    pub best_state: State,
    pub points: Vec<TrajectoryPoint>,
}

impl Tracker {
    pub fn new(energy: f64, state: &State) -> Self {
        Tracker {
            best_energy: energy,
            best_state: state.clone(),
            points: vec![TrajectoryPoint { iteration: 0, best_energy: energy }],
        }
    }

    #[inline]
    pub fn observe(&mut self, iteration: u64, energy: f64, state: &State) {
        if energy < self.best_energy {
            self.best_energy = energy;
            self.best_state.clone_from(state);
            self.points.push(TrajectoryPoint { iteration, best_energy: energy });
        }
    }

    pub fn finish(mut self, total: u64) -> (f64, State, Vec<TrajectoryPoint>) {
        if self.points.last().is_some_and(|p| p.iteration != total) {
            self.points.push(TrajectoryPoint { iteration: total, best_energy: self.best_energy });
        }
        (self.best_energy, self.best_state, self.points)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepeatResult {
    pub repeat: usize,
    pub seed: u64,
    pub best_energy: f64,
    pub best_state: State,
    pub trajectory: Vec<TrajectoryPoint>,
    /// Accepted fraction of proposed swaps per adjacent replica pair (PT only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub swap_acceptance: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub seed: u64,
    pub total_iterations: u64,
    pub best_energy: f64,
    pub best_state: State,
    pub best_repeat: usize,
    /// Best energy over all repeats as a function of iteration.
    pub trajectory: Vec<TrajectoryPoint>,
    pub repeats: Vec<RepeatResult>,
}

impl SolveResult {
    pub(crate) fn from_repeats(seed: u64, total_iterations: u64, repeats: Vec<RepeatResult>) -> Self {
        let best_repeat = repeats
            .iter()
            .enumerate()
            .fold(0, |b, (i, r)| if r.best_energy < repeats[b].best_energy { i } else { b });
        let trajectory = merge_trajectories(repeats.iter().map(|r| r.trajectory.as_slice()));
        SolveResult {
            seed,
            total_iterations,
            best_energy: repeats[best_repeat].best_energy,
            best_state: repeats[best_repeat].best_state.clone(),
            best_repeat,
            trajectory,
            repeats,
        }
    }

    pub fn write_trajectory_csv<W: Write>(&self, out: W) -> Result<()> {
        write_trajectory_csv(&self.trajectory, out)
    }
}

/// Pointwise minimum of step-function trajectories.
pub fn merge_trajectories<'a>(trajs: impl IntoIterator<Item = &'a [TrajectoryPoint]>) -> Vec<TrajectoryPoint> {
    let mut all: Vec<TrajectoryPoint> = trajs.into_iter().flatten().copied().collect();
    all.sort_by(|a, b| a.iteration.cmp(&b.iteration).then(a.best_energy.total_cmp(&b.best_energy)));
    let last = all.last().map(|p| p.iteration);
    let mut out: Vec<TrajectoryPoint> = Vec::new();
    for p in all {
        match out.last_mut() {
            None => out.push(p),
            Some(q) if p.best_energy < q.best_energy => {
                if q.iteration == p.iteration {
                    q.best_energy = p.best_energy;
                } else {
                    out.push(p);
                }
            }
            Some(_) => {}
        }
    }
    if let (Some(t), Some(q)) = (last, out.last().copied()) {
        if q.iteration != t {
            out.push(TrajectoryPoint { iteration: t, best_energy: q.best_energy });
        }
    }
    out
}

pub fn write_trajectory_csv<W: Write>(traj: &[TrajectoryPoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for p in traj {
        w.serialize(p)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

/// Best value reached at or before `iteration`.
pub fn best_at(traj: &[TrajectoryPoint], iteration: u64) -> Option<f64> {
    traj.iter().take_while(|p| p.iteration <= iteration).last().map(|p| p.best_energy)
}
