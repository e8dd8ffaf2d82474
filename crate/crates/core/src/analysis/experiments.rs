//! Experiment drivers shared by the study runner, the CLI and the tests.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quality::{iterations_to_quality, quality_curve, Provenance, QualityCurve, Reference};
use crate::colouring::{group_count_sweep, mean_std, plan_groups};
use crate::error::{Error, Result};
use crate::model::{ClampMask, EnergyModel};
use crate::problems::hitting_set::{
    brute_force_hitting_set, encode_hitting_set, gen_hypergraph, greedy_reference, hs_quality, repair, Hypergraph,
};
use crate::problems::spinglass::{brute_force_ground, gen_er, ising_to_qubo, pt_baseline, pt_baseline_config, ErSpec};
use crate::problems::tsp::{bundled, bundled_optimum, held_karp, kmc_pipeline, read_tsplib, solve_tsp, KmcConfig, TspBenchRow, TspInstance};
use crate::rng::{derive_seed, tag};
use crate::solvers::{SolveResult, SolverConfig, TrajectoryPoint};
use crate::transforms::quadratise;

/// Largest instance scored against an exhaustive reference.
const EXACT_LIMIT: usize = 24;

/// Stream tag for solver seeds inside experiments.
const SOLVE: u64 = 101;

fn float_key(x: f64) -> u64 {
    x.to_bits()
}

/// How a hitting-set instance is scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HsReference {
    /// Brute force when small enough, greedy otherwise.
    #[default]
    Auto,
    Greedy,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HsExperiment {
    pub k: usize,
    pub sizes: Vec<usize>,
    pub instances: usize,
    /// Edges per vertex; `m = round(ratio·N)`.
    pub edges_per_vertex: f64,
    pub a: f64,
    pub b: f64,
    pub reference: HsReference,
    /// Total group updates per repeat are `iters_per_n·N`. `None` keeps the
    /// solver budget as given.
    pub iters_per_n: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HsOutcome {
    pub n: usize,
    pub m: usize,
    pub instance: usize,
    pub reference: Reference,
    pub found: usize,
    /// Whether the sampled state was already a cover before repair.
    pub raw_valid: bool,
    pub q: f64,
    pub num_groups: usize,
    pub total_iterations: u64,
    pub trajectory: Vec<TrajectoryPoint>,
}

fn hs_reference(h: &Hypergraph, how: HsReference) -> Result<Reference> {
    let exact = match how {
        HsReference::Auto => h.num_vertices <= EXACT_LIMIT,
        HsReference::Greedy => false,
        HsReference::BruteForce => true,
    };
    Ok(if exact {
        Reference { value: brute_force_hitting_set(h)?.size() as f64, provenance: Provenance::BruteForce }
    } else {
        Reference { value: greedy_reference(h).size() as f64, provenance: Provenance::Greedy }
    })
}

/// Budget for an `n`-variable problem when scaling by `iters_per_n`.
pub fn budget_for(solver: &SolverConfig, iters_per_n: Option<f64>, n: usize) -> SolverConfig {
    match iters_per_n {
        Some(r) => solver.with_total_iterations((r * n as f64).ceil() as u64),
        None => solver.clone(),
    }
}

/// Number of edges used for an `n`-vertex instance.
pub fn hs_edges(exp: &HsExperiment, n: usize) -> usize {
    ((exp.edges_per_vertex * n as f64).round() as usize).max(1)
}

/// Generates the `i`-th instance of size `n`.
pub fn hs_instance(exp: &HsExperiment, n: usize, i: usize, seed: u64) -> Result<Hypergraph> {
    gen_hypergraph(n, hs_edges(exp, n), exp.k, derive_seed(seed, &[tag::INSTANCE, n as u64, i as u64]))
}

/// Solves every instance with `solver` and scores the repaired best state.
pub fn run_hs(exp: &HsExperiment, solver: &SolverConfig, seed: u64) -> Result<Vec<HsOutcome>> {
    let jobs: Vec<(usize, usize)> =
        exp.sizes.iter().flat_map(|&n| (0..exp.instances).map(move |i| (n, i))).collect();
    jobs.par_iter()
        .map(|&(n, i)| {
            let h = hs_instance(exp, n, i, seed)?;
            let reference = hs_reference(&h, exp.reference)?;
            let model = encode_hitting_set(&h, exp.a, exp.b)?;
            let clamp = ClampMask::all_free(n);
            let plan = plan_groups(&model, &clamp)?;
            let cfg = budget_for(solver, exp.iters_per_n, n)
                .with_seed(derive_seed(seed, &[SOLVE, n as u64, i as u64]));
            let result = cfg.run(&model, &clamp, &plan)?;
            let best = result.best_state.as_slice();
            let fixed = repair(&h, best);
            let q = fixed.size() as f64 / reference.value;
            let raw_valid = h.is_hit_by(best);
            // Energies of valid states are B·|Z|, so the energy trajectory is
            // scored against B times the reference size.
            Ok(HsOutcome {
                n,
                m: h.num_edges(),
                instance: i,
                reference: Reference { value: exp.b * reference.value, provenance: reference.provenance },
                found: fixed.size(),
                raw_valid,
                q,
                num_groups: plan.num_groups(),
                total_iterations: result.total_iterations,
                trajectory: result.trajectory,
            })
        })
        .collect()
}

/// Iterations-to-quality row for one size and target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HsScalingRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub q_target: f64,
    pub mean_iters: Option<f64>,
    pub std_iters: Option<f64>,
    pub reached: f64,
    pub reference: Provenance,
}

pub fn hs_scaling_rows(outcomes: &[HsOutcome], targets: &[f64]) -> Result<Vec<HsScalingRow>> {
    let mut sizes: Vec<usize> = outcomes.iter().map(|o| o.n).collect();
    sizes.dedup();
    let mut rows = Vec::new();
    for n in sizes {
        let group: Vec<&HsOutcome> = outcomes.iter().filter(|o| o.n == n).collect();
        let runs: Vec<(&[TrajectoryPoint], f64)> =
            group.iter().map(|o| (o.trajectory.as_slice(), o.reference.value)).collect();
        let curve = quality_curve(&runs, targets, group[0].reference.provenance)?;
        rows.extend(curve_rows(n, &curve));
    }
    Ok(rows)
}

fn curve_rows(n: usize, curve: &QualityCurve) -> impl Iterator<Item = HsScalingRow> + '_ {
    curve.targets.iter().map(move |t| HsScalingRow {
        n,
        q_target: t.q_target,
        mean_iters: t.mean_iters,
        std_iters: t.std_iters,
        reached: t.reached,
        reference: curve.provenance,
    })
}

/// Quality summary for one size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HsQualityRow {
    pub solver: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub m: usize,
    pub k: usize,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub q_mean: f64,
    pub q_std: f64,
    /// Mean iterations to reach `q_target` over the instances that did.
    pub iterations_to_quality: Option<f64>,
    pub q_target: f64,
    pub raw_valid: f64,
    pub reference: Provenance,
}

pub fn hs_quality_rows(
    exp: &HsExperiment,
    solver: &SolverConfig,
    outcomes: &[HsOutcome],
    q_target: f64,
) -> Result<Vec<HsQualityRow>> {
    let mut rows = Vec::new();
    for &n in &exp.sizes {
        let group: Vec<&HsOutcome> = outcomes.iter().filter(|o| o.n == n).collect();
        if group.is_empty() {
            continue;
        }
        let (q_mean, q_std) = mean_std(group.iter().map(|o| o.q));
        let mut reached = Vec::new();
        for o in &group {
            if let Some(it) = iterations_to_quality(&o.trajectory, o.reference.value, q_target)? {
                reached.push(it as f64);
            }
        }
        rows.push(HsQualityRow {
            solver: solver.name().to_string(),
            n,
            m: group[0].m,
            k: exp.k,
            a: exp.a,
            b: exp.b,
            q_mean,
            q_std,
            iterations_to_quality: (!reached.is_empty()).then(|| mean_std(reached.iter().copied()).0),
            q_target,
            raw_valid: group.iter().filter(|o| o.raw_valid).count() as f64 / group.len() as f64,
            reference: group[0].reference.provenance,
        });
    }
    Ok(rows)
}

/// Native higher-order solve against the quadratised model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HuboQuboExperiment {
    pub hs: HsExperiment,
    /// Multiples of the default quadratisation strength to try.
    pub strength_factors: Vec<f64>,
    /// Budget multiplier per variable (5 in the reference settings).
    pub iters_per_var: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HuboQuboRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    pub instances: usize,
    pub nvars_hubo: usize,
    pub nvars_qubo_mean: f64,
    pub strength_factor: f64,
    /// `hubo` when the QUBO gets the higher-order budget, `qubo` when it is
    /// scaled by its own variable count.
    pub budget_rule: String,
    pub q_hubo_mean: f64,
    pub q_hubo_std: f64,
    pub q_qubo_mean: f64,
    pub q_qubo_std: f64,
}

struct PairedRun {
    q_hubo: f64,
    nvars_qubo: usize,
    /// Indexed by strength factor, then budget rule.
    q_qubo: Vec<[f64; 2]>,
}

pub fn run_hubo_vs_qubo(exp: &HuboQuboExperiment, solver: &SolverConfig, seed: u64) -> Result<Vec<HuboQuboRow>> {
    if exp.strength_factors.is_empty() || exp.strength_factors.iter().any(|&f| f <= 0.0) {
        return Err(Error::Config("strength factors must be a non-empty list of positive numbers".into()));
    }
    let hs = &exp.hs;
    let mut rows = Vec::new();
    for &n in &hs.sizes {
        let runs: Vec<PairedRun> = (0..hs.instances)
            .into_par_iter()
            .map(|i| paired_run(exp, solver, n, i, seed))
            .collect::<Result<_>>()?;
        let (q_hubo_mean, q_hubo_std) = mean_std(runs.iter().map(|r| r.q_hubo));
        let nvars_qubo_mean = mean_std(runs.iter().map(|r| r.nvars_qubo as f64)).0;
        for (f_idx, &factor) in exp.strength_factors.iter().enumerate() {
            for (rule_idx, rule) in ["hubo", "qubo"].iter().enumerate() {
                let (q_qubo_mean, q_qubo_std) = mean_std(runs.iter().map(|r| r.q_qubo[f_idx][rule_idx]));
                rows.push(HuboQuboRow {
                    n,
                    k: hs.k,
                    instances: hs.instances,
                    nvars_hubo: n,
                    nvars_qubo_mean,
                    strength_factor: factor,
                    budget_rule: rule.to_string(),
                    q_hubo_mean,
                    q_hubo_std,
                    q_qubo_mean,
                    q_qubo_std,
                });
            }
        }
    }
    Ok(rows)
}

fn paired_run(exp: &HuboQuboExperiment, solver: &SolverConfig, n: usize, i: usize, seed: u64) -> Result<PairedRun> {
    let hs = &exp.hs;
    let h = hs_instance(hs, n, i, seed)?;
    let reference = greedy_reference(&h);
    let score = |s: &[u8]| hs_quality(&repair(&h, s), &reference);
    let hubo = encode_hitting_set(&h, hs.a, hs.b)?;
    let hubo_budget = (exp.iters_per_var * n as f64).ceil() as u64;
    let hubo_cfg = solver
        .with_total_iterations(hubo_budget)
        .with_seed(derive_seed(seed, &[SOLVE, n as u64, i as u64]));
    let q_hubo = score(solve_plain(&hubo, &hubo_cfg)?.best_state.as_slice())?;

    let base = quadratise(&hubo, None)?.strength;
    let mut q_qubo = Vec::with_capacity(exp.strength_factors.len());
    let mut nvars_qubo = 0;
    for (f_idx, &factor) in exp.strength_factors.iter().enumerate() {
        let quad = quadratise(&hubo, Some(base * factor))?;
        nvars_qubo = quad.model.num_vars();
        let qubo_budget = (exp.iters_per_var * nvars_qubo as f64).ceil() as u64;
        let mut pair = [0.0; 2];
        for (rule_idx, budget) in [hubo_budget, qubo_budget].into_iter().enumerate() {
            let cfg = solver
                .with_total_iterations(budget)
                .with_seed(derive_seed(seed, &[SOLVE, n as u64, i as u64, 1 + f_idx as u64, rule_idx as u64]));
            let best = solve_plain(&quad.model, &cfg)?.best_state;
            pair[rule_idx] = score(quad.project(best.as_slice()).as_slice())?;
        }
        q_qubo.push(pair);
    }
    Ok(PairedRun { q_hubo, nvars_qubo, q_qubo })
}

fn solve_plain(model: &EnergyModel, cfg: &SolverConfig) -> Result<SolveResult> {
    let clamp = ClampMask::all_free(model.num_vars());
    let plan = plan_groups(model, &clamp)?;
    cfg.run(model, &clamp, &plan)
}

/// Spin-glass quality study on Erdős–Rényi graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SgExperiment {
    pub sizes: Vec<usize>,
    pub densities: Vec<f64>,
    pub instances: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SgOutcome {
    pub n: usize,
    pub p: f64,
    pub instance: usize,
    /// Best of the baseline and the solver run.
    pub reference: Reference,
    pub baseline: f64,
    pub best_energy: f64,
    pub num_groups: usize,
    pub avg_group_size: f64,
    pub trajectory: Vec<TrajectoryPoint>,
}

pub fn run_sg(exp: &SgExperiment, solver: &SolverConfig, seed: u64) -> Result<Vec<SgOutcome>> {
    let jobs: Vec<(usize, f64, usize)> = exp
        .sizes
        .iter()
        .flat_map(|&n| exp.densities.iter().flat_map(move |&p| (0..exp.instances).map(move |i| (n, p, i))))
        .collect();
    jobs.par_iter()
        .map(|&(n, p, i)| {
            let path = [n as u64, float_key(p), i as u64];
            let inst = gen_er(ErSpec { n, p }, derive_seed(seed, &[&[tag::INSTANCE][..], &path].concat()))?;
            let (baseline, provenance) = if n <= EXACT_LIMIT {
                (brute_force_ground(&inst)?.0, Provenance::BruteForce)
            } else {
                let cfg = pt_baseline_config(n, derive_seed(seed, &[&[tag::SAMPLE][..], &path].concat()));
                (pt_baseline(&inst, &cfg)?, Provenance::LongPt)
            };
            let model = ising_to_qubo(&inst)?;
            let clamp = ClampMask::all_free(n);
            let plan = plan_groups(&model, &clamp)?;
            let cfg = solver.with_seed(derive_seed(seed, &[&[SOLVE][..], &path].concat()));
            let result = cfg.run(&model, &clamp, &plan)?;
            Ok(SgOutcome {
                n,
                p,
                instance: i,
                reference: Reference { value: baseline.min(result.best_energy), provenance },
                baseline,
                best_energy: result.best_energy,
                num_groups: plan.num_groups(),
                avg_group_size: plan.avg_group_size(),
                trajectory: result.trajectory,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SgRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub p: f64,
    pub q_target: f64,
    pub mean_iterations: Option<f64>,
    pub std: Option<f64>,
    pub reached: f64,
    pub mean_groups: f64,
    pub reference: Provenance,
}

pub fn sg_rows(exp: &SgExperiment, outcomes: &[SgOutcome], targets: &[f64]) -> Result<Vec<SgRow>> {
    let mut rows = Vec::new();
    for &n in &exp.sizes {
        for &p in &exp.densities {
            let group: Vec<&SgOutcome> = outcomes.iter().filter(|o| o.n == n && o.p == p).collect();
            if group.is_empty() {
                continue;
            }
            let runs: Vec<(&[TrajectoryPoint], f64)> =
                group.iter().map(|o| (o.trajectory.as_slice(), o.reference.value)).collect();
            let curve = quality_curve(&runs, targets, group[0].reference.provenance)?;
            let mean_groups = mean_std(group.iter().map(|o| o.num_groups as f64)).0;
            rows.extend(curve.targets.iter().map(|t| SgRow {
                n,
                p,
                q_target: t.q_target,
                mean_iterations: t.mean_iters,
                std: t.std_iters,
                reached: t.reached,
                mean_groups,
                reference: curve.provenance,
            }));
        }
    }
    Ok(rows)
}

/// One benchmark instance with its clustering settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TspBenchInstance {
    /// Bundled instance name, or a label when `path` is given.
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub a0: f64,
    /// Cluster counts, finest first.
    pub levels: Vec<usize>,
    /// Penalties matching `levels`.
    pub penalties: Vec<f64>,
    /// Known optimum; otherwise Held-Karp or the bundled value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimum: Option<f64>,
}

impl TspBenchInstance {
    pub fn load(&self) -> Result<TspInstance> {
        match &self.path {
            Some(p) => read_tsplib(p),
            None => bundled(&self.name).ok_or_else(|| Error::Config(format!("unknown bundled instance {:?}", self.name))),
        }
    }

    pub fn reference(&self, inst: &TspInstance) -> Result<Reference> {
        if let Some(v) = self.optimum {
            return Ok(Reference { value: v, provenance: Provenance::Published });
        }
        if inst.num_cities() <= 16 {
            return Ok(Reference { value: held_karp(inst)?.0, provenance: Provenance::HeldKarp });
        }
        bundled_optimum(&self.name)
            .map(|v| Reference { value: v, provenance: Provenance::Published })
            .ok_or_else(|| Error::Config(format!("no optimum known for {:?}; set `optimum`", self.name)))
    }

    fn kmc_config(&self, b: f64, solver: &SolverConfig, seed: u64) -> KmcConfig {
        let mut penalties = vec![self.a0];
        penalties.extend_from_slice(&self.penalties);
        KmcConfig { levels: self.levels.clone(), penalties, b, solver: solver.clone(), seed }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TspMethod {
    #[serde(rename = "SA")]
    Sa,
    #[serde(rename = "PT")]
    Pt,
    #[serde(rename = "SA+KMC")]
    SaKmc,
    #[serde(rename = "PT+KMC")]
    PtKmc,
}

impl TspMethod {
    pub fn label(self) -> &'static str {
        match self {
            TspMethod::Sa => "SA",
            TspMethod::Pt => "PT",
            TspMethod::SaKmc => "SA+KMC",
            TspMethod::PtKmc => "PT+KMC",
        }
    }

    fn uses_kmc(self) -> bool {
        matches!(self, TspMethod::SaKmc | TspMethod::PtKmc)
    }

    fn uses_pt(self) -> bool {
        matches!(self, TspMethod::Pt | TspMethod::PtKmc)
    }
}

/// Tour costs of `runs` independent seeds; `None` marks an invalid tour.
pub fn tsp_costs(
    spec: &TspBenchInstance,
    inst: &TspInstance,
    method: TspMethod,
    solver: &SolverConfig,
    b: f64,
    runs: usize,
    seed: u64,
) -> Result<Vec<Option<f64>>> {
    if spec.levels.len() != spec.penalties.len() {
        return Err(Error::Config(format!("{}: levels and penalties differ in length", spec.name)));
    }
    (0..runs)
        .into_par_iter()
        .map(|r| {
            let run_seed = derive_seed(seed, &[SOLVE, method as u64, r as u64]);
            if method.uses_kmc() {
                match kmc_pipeline(inst, &spec.kmc_config(b, solver, run_seed)) {
                    Ok(out) => Ok(out.tour.cost.filter(|_| out.tour.valid)),
                    Err(Error::Infeasible(_)) => Ok(None),
                    Err(e) => Err(e),
                }
            } else {
                let cfg = solver.scaled_budget(spec.levels.len() + 1).with_seed(run_seed);
                let (tour, ..) = solve_tsp(inst, spec.a0, b, None, &cfg)?;
                Ok(tour.cost.filter(|_| tour.valid))
            }
        })
        .collect()
}

/// Benchmark rows plus the reference tour length of each instance.
pub type TspBench = (Vec<TspBenchRow>, Vec<(String, Reference)>);

/// Benchmark rows for every instance and method.
pub fn run_tsp_bench(
    instances: &[TspBenchInstance],
    methods: &[TspMethod],
    sa: Option<&SolverConfig>,
    pt: Option<&SolverConfig>,
    b: f64,
    runs: usize,
    seed: u64,
) -> Result<TspBench> {
    let mut rows = Vec::new();
    let mut refs = Vec::new();
    for (idx, spec) in instances.iter().enumerate() {
        let inst = spec.load()?;
        let reference = spec.reference(&inst)?;
        refs.push((spec.name.clone(), reference));
        for &method in methods {
            let solver = if method.uses_pt() { pt } else { sa }
                .ok_or_else(|| Error::Config(format!("method {} needs a solver section", method.label())))?;
            let costs = tsp_costs(spec, &inst, method, solver, b, runs, derive_seed(seed, &[tag::INSTANCE, idx as u64]))?;
            rows.push(TspBenchRow::from_costs(&spec.name, method.label(), reference.value, &costs));
        }
    }
    Ok((rows, refs))
}

/// Group-count sweep row, with the vertex count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSweepRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub mean_groups: f64,
    pub std_groups: f64,
}

pub fn run_group_sweep(
    sizes: &[usize],
    k_range: &[usize],
    m_range: &[usize],
    samples: usize,
    seed: u64,
) -> Result<Vec<GroupSweepRow>> {
    let mut rows = Vec::new();
    for &n in sizes {
        for c in group_count_sweep(n, k_range, m_range, samples, derive_seed(seed, &[n as u64]))? {
            rows.push(GroupSweepRow { n, k: c.k, m: c.m, mean_groups: c.mean_groups, std_groups: c.std_groups });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::SaConfig;

    fn small_hs() -> HsExperiment {
        HsExperiment {
            k: 3,
            sizes: vec![12],
            instances: 4,
            edges_per_vertex: 1.0,
            a: 13.0,
            b: 9.0,
            reference: HsReference::Auto,
            iters_per_n: Some(20.0),
        }
    }

    #[test]
    fn hs_outcomes_are_scored_against_exact_minimum() {
        let sa = SolverConfig::Sa(SaConfig::new(0.01, 1.1, 20, 1, 4, 0));
        let out = run_hs(&small_hs(), &sa, 3).unwrap();
        assert_eq!(out.len(), 4);
        for o in &out {
            assert_eq!(o.reference.provenance, Provenance::BruteForce);
            assert!(o.q >= 1.0);
            assert_eq!(o.total_iterations, 240);
        }
        assert_eq!(out, run_hs(&small_hs(), &sa, 3).unwrap());
    }

    #[test]
    fn scaling_rows_cover_every_target() {
        let sa = SolverConfig::Sa(SaConfig::new(0.01, 1.1, 20, 1, 2, 0));
        let out = run_hs(&small_hs(), &sa, 5).unwrap();
        let rows = hs_scaling_rows(&out, &[2.0, 1.5, 1.0]).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows[0].reached >= rows[2].reached);
    }

    #[test]
    fn sg_reference_never_worse_than_solver() {
        let exp = SgExperiment { sizes: vec![10], densities: vec![0.5], instances: 3 };
        let sa = SolverConfig::Sa(SaConfig::new(0.074, 0.74, 200, 1, 1, 0));
        for o in run_sg(&exp, &sa, 1).unwrap() {
            assert!(o.reference.value <= o.best_energy);
            assert!(o.reference.value <= o.baseline);
        }
    }

    #[test]
    fn budget_scaling_spreads_over_steps() {
        let sa = SolverConfig::Sa(SaConfig::new(0.01, 1.1, 100, 1, 1, 0));
        assert_eq!(budget_for(&sa, Some(5.0), 50).total_iterations(), 300);
        assert_eq!(budget_for(&sa, None, 50).total_iterations(), 100);
    }
}
