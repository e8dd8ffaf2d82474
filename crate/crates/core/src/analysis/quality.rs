//! Solution quality against a reference and iterations needed to reach it.

use serde::{Deserialize, Serialize};

use crate::colouring::mean_std;
use crate::error::{Error, Result};
use crate::solvers::TrajectoryPoint;

/// Where a reference value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Greedy,
    BruteForce,
    LongPt,
    /// Published optimum of a benchmark instance.
    Published,
    HeldKarp,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub value: f64,
    pub provenance: Provenance,
}

/// First iteration whose best value meets `target`.
///
/// With a positive reference (minimising a positive cost) the target is met
/// when `best/ref ≤ q`; with a negative reference (energies) when
/// `best/ref ≥ q`. `None` means not reached.
pub fn iterations_to_quality(traj: &[TrajectoryPoint], reference: f64, target: f64) -> Result<Option<u64>> {
    if reference == 0.0 || !reference.is_finite() {
        return Err(Error::Scoring(format!("reference value {reference} cannot define a quality ratio")));
    }
    let met = |e: f64| {
        let q = e / reference;
        if reference > 0.0 {
            q <= target
        } else {
            q >= target
        }
    };
    Ok(traj.iter().find(|p| met(p.best_energy)).map(|p| p.iteration))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetStats {
    pub q_target: f64,
    /// Mean over runs that reached the target.
    pub mean_iters: Option<f64>,
    pub std_iters: Option<f64>,
    /// Fraction of runs that reached the target.
    pub reached: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityCurve {
    pub provenance: Provenance,
    pub runs: usize,
    pub targets: Vec<TargetStats>,
}

/// Aggregates iterations-to-quality over runs, each with its own reference.
pub fn quality_curve(runs: &[(&[TrajectoryPoint], f64)], targets: &[f64], provenance: Provenance) -> Result<QualityCurve> {
    let mut stats = Vec::with_capacity(targets.len());
    for &q in targets {
        let mut hits = Vec::new();
        for &(traj, reference) in runs {
            if let Some(it) = iterations_to_quality(traj, reference, q)? {
                hits.push(it as f64);
            }
        }
        let (mean, std) = mean_std(hits.iter().copied());
        stats.push(TargetStats {
            q_target: q,
            mean_iters: (!hits.is_empty()).then_some(mean),
            std_iters: (!hits.is_empty()).then_some(std),
            reached: if runs.is_empty() { 0.0 } else { hits.len() as f64 / runs.len() as f64 },
        });
    }
    Ok(QualityCurve { provenance, runs: runs.len(), targets: stats })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(iteration: u64, best_energy: f64) -> TrajectoryPoint {
        TrajectoryPoint { iteration, best_energy }
    }

    #[test]
    fn positive_reference() {
        let traj = [tp(1, 10.0), tp(5, 6.0), tp(9, 5.0)];
        assert_eq!(iterations_to_quality(&traj, 5.0, 1.2).unwrap(), Some(5));
        assert_eq!(iterations_to_quality(&traj, 5.0, 0.9).unwrap(), None);
        assert_eq!(iterations_to_quality(&traj, 5.0, 1.0).unwrap(), Some(9));
    }

    #[test]
    fn negative_reference() {
        let traj = [tp(0, -10.0), tp(300, -80.0), tp(900, -95.0)];
        assert_eq!(iterations_to_quality(&traj, -100.0, 0.8).unwrap(), Some(300));
        assert_eq!(iterations_to_quality(&traj, -100.0, 0.5).unwrap(), Some(300));
        assert_eq!(iterations_to_quality(&traj, -100.0, 1.0).unwrap(), None);
    }

    #[test]
    fn zero_reference_rejected() {
        assert!(iterations_to_quality(&[tp(0, 1.0)], 0.0, 1.0).is_err());
    }

    #[test]
    fn curve_averages_reached_runs_only() {
        let a = [tp(0, -10.0), tp(10, -90.0)];
        let b = [tp(0, -10.0), tp(30, -85.0)];
        let c = [tp(0, -10.0)];
        let curve = quality_curve(&[(&a, -100.0), (&b, -100.0), (&c, -100.0)], &[0.8], Provenance::LongPt).unwrap();
        let t = &curve.targets[0];
        assert_eq!(t.mean_iters, Some(20.0));
        assert!((t.reached - 2.0 / 3.0).abs() < 1e-12);
    }
}
