//! Coarse-to-fine solving with k-means cluster masks.

use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::encode::{decode_tour, encode_tsp, DecodedTour};
use super::kmeans::{build_cluster_tree, ClusterTree};
use super::mask::{build_mask, MaskMatrix};
use super::tsplib::{EdgeWeight, TspInstance};
use crate::colouring::plan_groups;
use crate::error::{Error, Result};
use crate::model::ClampMask;
use crate::rng::{self, tag};
use crate::solvers::{SolveResult, SolverConfig};
#[cfg(test)]
use crate::solvers::SaConfig;

/// Settings for one pipeline run.
///
/// `levels` lists the cluster counts from finest to coarsest. `penalties[0]`
/// applies to the full problem and `penalties[ℓ]` to level `ℓ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KmcConfig {
    pub levels: Vec<usize>,
    pub penalties: Vec<f64>,
    #[serde(default = "unit")]
    pub b: f64,
    pub solver: SolverConfig,
    #[serde(default)]
    pub seed: u64,
}

fn unit() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub level: usize,
    pub entities: usize,
    pub free_vars: usize,
    pub num_groups: usize,
    pub best_energy: f64,
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KmcOutcome {
    pub tour: DecodedTour,
    /// Coarsest level first.
    pub levels: Vec<LevelReport>,
    pub final_result: SolveResult,
}

/// Solves `inst` restricted by `clamp` (all-free when `None`) at penalty `a`.
pub fn solve_tsp(
    inst: &TspInstance,
    a: f64,
    b: f64,
    mask: Option<&MaskMatrix>,
    solver: &SolverConfig,
) -> Result<(DecodedTour, SolveResult, ClampMask, usize)> {
    let (model, clamp) = encode_tsp(inst, a, b, mask)?;
    let model = if mask.is_some() { model.condition(&clamp)? } else { model };
    let plan = plan_groups(&model, &clamp)?;
    let result = solver.run(&model, &clamp, &plan)?;
    let tour = decode_tour(inst, result.best_state.as_slice());
    Ok((tour, result, clamp, plan.num_groups()))
}

fn level_instance(inst: &TspInstance, tree: &ClusterTree, level: usize) -> Result<TspInstance> {
    if level == 0 {
        return Ok(inst.clone());
    }
    TspInstance::from_coords(format!("{}-L{level}", inst.name), tree.points(&inst.coords, level).to_vec(), inst.weight)
}

/// Clusters recursively, solves the coarsest level unmasked, then solves each
/// finer level under the mask induced by the tour one level up.
pub fn kmc_pipeline(inst: &TspInstance, cfg: &KmcConfig) -> Result<KmcOutcome> {
    if inst.weight == EdgeWeight::Explicit {
        return Err(Error::Domain("clustering needs city coordinates".into()));
    }
    let m = cfg.levels.len();
    if cfg.penalties.len() != m + 1 {
        return Err(Error::Config(format!("expected {} penalty weights for {m} levels, got {}", m + 1, cfg.penalties.len())));
    }
    let tree = build_cluster_tree(&inst.coords, &cfg.levels, rng::derive_seed(cfg.seed, &[tag::KMEANS]))?;
    let mut reports = Vec::with_capacity(m + 1);
    let mut parent: Option<Vec<usize>> = None;
    for level in (0..=m).rev() {
        let sub = level_instance(inst, &tree, level)?;
        let k = sub.num_cities();
        let mask = match &parent {
            None => None,
            Some(tour) => Some(build_mask(tour, &tree.levels[level].assignment, k)?),
        };
        let solver = cfg.solver.with_seed(rng::derive_seed(cfg.seed, &[tag::LEVEL, level as u64]));
        let (tour, result, clamp, groups) = solve_tsp(&sub, cfg.penalties[level], cfg.b, mask.as_ref(), &solver)?;
        reports.push(LevelReport {
            level,
            entities: k,
            free_vars: clamp.num_free(),
            num_groups: groups,
            best_energy: result.best_energy,
            valid: tour.valid,
        });
        if level == 0 {
            return Ok(KmcOutcome { tour, levels: reports, final_result: result });
        }
        if !tour.valid {
            return Err(Error::Infeasible(format!(
                "invalid tour at clustering level {level} ({k} entities); cannot build the next mask"
            )));
        }
        parent = Some(tour.tour);
    }
    unreachable!("level 0 always returns")
}

/// Header line with cost and validity, then one city per line.
pub fn format_tour(inst: &TspInstance, tour: &DecodedTour) -> String {
    let mut s = String::new();
    let cost = tour.cost.map_or_else(|| "none".to_string(), |c| c.to_string());
    let _ = writeln!(s, "# {} cities={} cost={cost} valid={}", inst.name, inst.num_cities(), tour.valid);
    for &c in &tour.tour {
        if c == usize::MAX {
            s.push_str("-\n");
        } else {
            let _ = writeln!(s, "{c}");
        }
    }
    s
}

/// Summary line for one instance and method, with ratios to the optimum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TspBenchRow {
    pub instance: String,
    pub method: String,
    pub best: Option<f64>,
    pub ave: Option<f64>,
    pub valid: f64,
    pub runs: usize,
}

impl TspBenchRow {
    /// Invalid tours are excluded from best and ave but counted in `valid`.
    pub fn from_costs(instance: &str, method: &str, optimum: f64, costs: &[Option<f64>]) -> Self {
        let ok: Vec<f64> = costs.iter().flatten().map(|c| c / optimum).collect();
        TspBenchRow {
            instance: instance.to_string(),
            method: method.to_string(),
            best: ok.iter().copied().reduce(f64::min),
            ave: (!ok.is_empty()).then(|| ok.iter().sum::<f64>() / ok.len() as f64),
            valid: if costs.is_empty() { 0.0 } else { ok.len() as f64 / costs.len() as f64 },
            runs: costs.len(),
        }
    }
}

pub fn write_bench_csv<W: Write>(rows: &[TspBenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> TspInstance {
        let pts = (0..n)
            .map(|i| {
                let a = i as f64 * std::f64::consts::TAU / n as f64;
                (100.0 * a.cos(), 100.0 * a.sin())
            })
            .collect();
        TspInstance::from_coords("ring", pts, EdgeWeight::Euc2d).unwrap()
    }

    #[test]
    fn pipeline_solves_a_ring() {
        let inst = ring(12);
        let cfg = KmcConfig {
            levels: vec![4],
            penalties: vec![250.0, 250.0],
            b: 1.0,
            solver: SolverConfig::Sa(SaConfig::new(0.001, 0.03, 200, 20, 4, 0)),
            seed: 3,
        };
        let out = kmc_pipeline(&inst, &cfg).unwrap();
        assert!(out.tour.valid);
        assert_eq!(out.levels.len(), 2);
        assert!(out.levels[1].free_vars < 144);
        assert!(out.tour.cost.unwrap() <= 1.2 * inst.tour_cost(&(0..12).collect::<Vec<_>>()));
    }

    #[test]
    fn penalties_must_match_levels() {
        let cfg = KmcConfig {
            levels: vec![4],
            penalties: vec![1.0],
            b: 1.0,
            solver: SolverConfig::Sa(SaConfig::new(0.0, 1.0, 1, 1, 1, 0)),
            seed: 0,
        };
        assert!(kmc_pipeline(&ring(6), &cfg).is_err());
    }

    #[test]
    fn bench_row_skips_invalid() {
        let r = TspBenchRow::from_costs("x", "SA", 10.0, &[Some(10.0), None, Some(12.0), Some(11.0)]);
        assert_eq!((r.best, r.valid), (Some(1.0), 0.75));
        assert!((r.ave.unwrap() - 1.1).abs() < 1e-12);
    }

    #[test]
    fn tour_file() {
        let inst = ring(3);
        let t = decode_tour(&inst, &super::super::encode::tour_to_state(3, &[0, 1, 2]));
        let text = format_tour(&inst, &t);
        assert!(text.starts_with("# ring cities=3 cost="));
        assert!(text.ends_with("valid=true\n0\n1\n2\n"));
    }
}
