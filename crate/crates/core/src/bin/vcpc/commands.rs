use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use vcpc::analysis::{self, StudySpec};
use vcpc::colouring::{build_conflict_graph, greedy_colour};
use vcpc::model::{read_model, write_model};
use vcpc::problems::hitting_set::{encode_hitting_set, gen_hypergraph, Hypergraph, DEFAULT_A, DEFAULT_B};
use vcpc::problems::spinglass::{gen_er as make_er, ising_to_qubo, qubo_to_ising, ErSpec, IsingInstance};
use vcpc::problems::tsp::{self, bundled, bundled_optimum, format_tour, kmc_pipeline, KmcConfig, TspInstance};
use vcpc::solvers::{PtConfig, SaConfig, SolverConfig, SolverFile};
use vcpc::transforms;
use vcpc::{ClampMask, EnergyModel};

use crate::report::{Ctx, Failure, Outcome};
use crate::{Colour, Encode, GenEr, GenHs, Quadratise, SolvePt, SolveSa, SolverKind, Sparsify, Study, TspKmc, Tts};

fn load_tsp(name: &str) -> Outcome<TspInstance> {
    if Path::new(name).exists() {
        return Ok(tsp::read_tsplib(name)?);
    }
    bundled(name).ok_or_else(|| {
        let known: Vec<&str> = tsp::bundled_names().collect();
        Failure::Usage(format!("{name:?} is neither a file nor a bundled instance ({})", known.join(", ")))
    })
}

fn solver_file(path: &Option<PathBuf>) -> Outcome<SolverFile> {
    Ok(match path {
        Some(p) => SolverFile::read(p)?,
        None => SolverFile::default(),
    })
}

fn file_name(p: &Path) -> String {
    p.display().to_string()
}

#[derive(Serialize)]
struct GenSummary {
    file: String,
    n: usize,
    edges: usize,
}

pub fn gen_hs(mut ctx: Ctx, a: &GenHs) -> Outcome {
    let seed = ctx.seed_or(0);
    let h = gen_hypergraph(a.n, a.m, a.k, seed)?;
    let file = format!("{}.hs", a.name);
    ctx.write(&file, h.to_text())?;
    let summary = GenSummary { file, n: h.num_vertices, edges: h.num_edges() };
    ctx.finish("gen-hs", json!({ "n": a.n, "m": a.m, "k": a.k, "seed": seed }), &summary)
}

pub fn gen_er(mut ctx: Ctx, a: &GenEr) -> Outcome {
    let seed = ctx.seed_or(0);
    let g = make_er(ErSpec { n: a.n, p: a.p }, seed)?;
    let file = format!("{}.ising", a.name);
    ctx.write(&file, g.to_text())?;
    let summary = GenSummary { file, n: g.num_spins, edges: g.num_edges() };
    ctx.finish("gen-er", json!({ "n": a.n, "p": a.p, "seed": seed }), &summary)
}

#[derive(Serialize)]
struct ModelSummary {
    file: String,
    num_vars: usize,
    num_terms: usize,
    max_order: usize,
    constant: f64,
}

impl ModelSummary {
    fn of(file: String, m: &EnergyModel) -> Self {
        ModelSummary { file, num_vars: m.num_vars(), num_terms: m.num_terms(), max_order: m.max_order(), constant: m.constant() }
    }
}

pub fn encode(mut ctx: Ctx, a: &Encode) -> Outcome {
    let (model, config) = if let Some(p) = &a.hs {
        let h = Hypergraph::read(p)?;
        let (ca, cb) = (a.a.unwrap_or(DEFAULT_A), a.b.unwrap_or(DEFAULT_B));
        (encode_hitting_set(&h, ca, cb)?, json!({ "hs": file_name(p), "A": ca, "B": cb }))
    } else if let Some(p) = &a.ising {
        let g = IsingInstance::read(p)?;
        (ising_to_qubo(&g)?, json!({ "ising": file_name(p) }))
    } else {
        let name = a.tsp.as_deref().expect("clap requires one input");
        let inst = load_tsp(name)?;
        let ca = a.a.ok_or_else(|| Failure::Usage("TSP encoding needs --a (penalty weight)".into()))?;
        let cb = a.b.unwrap_or(1.0);
        (tsp::encode_tsp(&inst, ca, cb, None)?.0, json!({ "tsp": name, "A": ca, "B": cb }))
    };
    let file = format!("{}.hubo", a.name);
    ctx.write(&file, write_model(&model))?;
    ctx.finish("encode", config, &ModelSummary::of(file, &model))
}

#[derive(Serialize)]
struct ColourSummary {
    num_vars: usize,
    num_groups: usize,
    avg_group_size: f64,
    max_degree: usize,
    /// Greedy never needs more than Δ + 1 groups.
    bound: usize,
    conflict_free: bool,
}

pub fn colour(mut ctx: Ctx, a: &Colour) -> Outcome {
    let model = read_model(&a.model)?;
    let clamp = ClampMask::all_free(model.num_vars());
    let graph = build_conflict_graph(&model, &clamp)?;
    let plan = greedy_colour(&graph);
    ctx.write_json("groups.json", &plan)?;
    let summary = ColourSummary {
        num_vars: model.num_vars(),
        num_groups: plan.num_groups(),
        avg_group_size: plan.avg_group_size(),
        max_degree: graph.max_degree(),
        bound: graph.max_degree() + 1,
        conflict_free: plan.is_valid_for(&graph, &clamp),
    };
    ctx.finish("colour", json!({ "model": file_name(&a.model) }), &summary)
}

#[derive(Serialize)]
struct SolveSummary {
    solver: &'static str,
    seed: u64,
    best_energy: f64,
    best_repeat: usize,
    total_iterations: u64,
    num_groups: usize,
    avg_group_size: f64,
}

fn run_solver(mut ctx: Ctx, command: &str, model_path: &Path, solver: SolverConfig) -> Outcome {
    let model = read_model(model_path)?;
    let clamp = ClampMask::all_free(model.num_vars());
    let plan = vcpc::colouring::plan_groups(&model, &clamp)?;
    let result = solver.run(&model, &clamp, &plan)?;
    ctx.write_json("result.json", &result)?;
    ctx.write_csv("trajectory.csv", &result.trajectory)?;
    let summary = SolveSummary {
        solver: solver.name(),
        seed: solver.seed(),
        best_energy: result.best_energy,
        best_repeat: result.best_repeat,
        total_iterations: result.total_iterations,
        num_groups: plan.num_groups(),
        avg_group_size: plan.avg_group_size(),
    };
    let config = json!({ "model": file_name(model_path), "solver": solver });
    ctx.finish(command, config, &summary)
}

pub fn solve_sa(ctx: Ctx, a: &SolveSa) -> Outcome {
    let mut cfg = solver_file(&a.config)?.sa.unwrap_or_else(|| SaConfig::new(0.01, 1.1, 100, 1, 1, 0));
    cfg.beta_start = a.beta_start.unwrap_or(cfg.beta_start);
    cfg.beta_end = a.beta_end.unwrap_or(cfg.beta_end);
    cfg.steps = a.steps.unwrap_or(cfg.steps);
    cfg.iters_per_step = a.iters.unwrap_or(cfg.iters_per_step);
    cfg.repeats = a.reps.unwrap_or(cfg.repeats);
    cfg.seed = ctx.seed_or(cfg.seed);
    cfg.validate()?;
    run_solver(ctx, "solve-sa", &a.model, SolverConfig::Sa(cfg))
}

pub fn solve_pt(ctx: Ctx, a: &SolvePt) -> Outcome {
    let mut cfg = solver_file(&a.config)?.pt.unwrap_or_else(|| PtConfig::new(0.5, 10.0, 20, 1000, 25, 1, 0));
    cfg.beta_start = a.beta_start.unwrap_or(cfg.beta_start);
    cfg.beta_end = a.beta_end.unwrap_or(cfg.beta_end);
    cfg.replicas = a.replicas.unwrap_or(cfg.replicas);
    cfg.iters = a.iters.unwrap_or(cfg.iters);
    cfg.swap_interval = a.swap.unwrap_or(cfg.swap_interval);
    cfg.repeats = a.reps.unwrap_or(cfg.repeats);
    cfg.seed = ctx.seed_or(cfg.seed);
    cfg.validate()?;
    run_solver(ctx, "solve-pt", &a.model, SolverConfig::Pt(cfg))
}

#[derive(Serialize)]
struct TourSummary {
    instance: String,
    cities: usize,
    valid: bool,
    cost: Option<f64>,
    optimum: Option<f64>,
    ratio: Option<f64>,
}

pub fn tsp_kmc(mut ctx: Ctx, a: &TspKmc) -> Outcome {
    let inst = load_tsp(&a.instance)?;
    let file = solver_file(&a.config)?;
    let solver = match a.solver {
        SolverKind::Sa => SolverConfig::Sa(file.sa.unwrap_or_else(|| SaConfig::new(0.0001, 0.01, 200, 1000, 1, 0))),
        SolverKind::Pt => SolverConfig::Pt(file.pt.unwrap_or_else(|| PtConfig::new(0.0001, 0.01, 20, 10000, 100, 1, 0))),
    };
    let seed = ctx.seed_or(solver.seed());
    let cfg = KmcConfig { levels: a.levels.clone(), penalties: a.penalties.clone(), b: a.b, solver, seed };
    let outcome = kmc_pipeline(&inst, &cfg)?;
    ctx.write("tour.txt", format_tour(&inst, &outcome.tour))?;
    ctx.write_csv("levels.csv", &outcome.levels)?;
    let optimum = bundled_optimum(&inst.name);
    let cost = outcome.tour.cost.filter(|_| outcome.tour.valid);
    let summary = TourSummary {
        instance: inst.name.clone(),
        cities: inst.num_cities(),
        valid: outcome.tour.valid,
        cost,
        optimum,
        ratio: cost.zip(optimum).map(|(c, o)| c / o),
    };
    ctx.finish("tsp-kmc", json!({ "instance": a.instance, "kmc": cfg }), &summary)
}

#[derive(Serialize)]
struct QuadSummary {
    file: String,
    num_original: usize,
    num_aux: usize,
    num_vars: usize,
    strength: f64,
    max_order: usize,
    /// Original terms of order three or more.
    reduced_terms: usize,
    aux_per_term: f64,
}

pub fn quadratise(mut ctx: Ctx, a: &Quadratise) -> Outcome {
    let model = read_model(&a.model)?;
    let q = transforms::quadratise(&model, a.strength)?;
    let file = format!("{}.hubo", a.name);
    ctx.write(&file, write_model(&q.model))?;
    let aux: Vec<_> = q
        .aux_pairs
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| json!({ "aux": q.num_original + i, "a": x, "b": y }))
        .collect();
    ctx.write_json("aux.json", &aux)?;
    let reduced_terms: usize = model.order_histogram().iter().skip(3).sum();
    let s = q.summary();
    let summary = QuadSummary {
        file,
        num_original: s.num_original,
        num_aux: s.num_aux,
        num_vars: s.num_vars,
        strength: s.strength,
        max_order: s.max_order,
        reduced_terms,
        aux_per_term: if reduced_terms == 0 { 0.0 } else { s.num_aux as f64 / reduced_terms as f64 },
    };
    ctx.finish("quadratise", json!({ "model": file_name(&a.model), "strength": a.strength }), &summary)
}

#[derive(Serialize)]
struct SparsifySummary {
    budget: usize,
    logical: usize,
    physical: usize,
    lambda: f64,
    max_degree: usize,
    #[serde(rename = "r_N")]
    r_n: f64,
    #[serde(rename = "r_S")]
    r_s: f64,
    m_orig: f64,
    m_new: f64,
}

#[derive(Serialize)]
struct SweepSummary {
    file: String,
    rows: usize,
    max_physical: usize,
}

pub fn sparsify(mut ctx: Ctx, a: &Sparsify) -> Outcome {
    let (g, source) = match (&a.ising, &a.model) {
        (Some(p), _) => (IsingInstance::read(p)?, json!({ "ising": file_name(p) })),
        (None, Some(p)) => (qubo_to_ising(&read_model(p)?)?.0, json!({ "model": file_name(p) })),
        (None, None) => unreachable!("clap requires one input"),
    };
    if a.sweep {
        let rows = transforms::sparsify_sweep(&g, &[])?;
        ctx.write_csv("sparsify.csv", &rows)?;
        let summary = SweepSummary {
            file: "sparsify.csv".into(),
            rows: rows.len(),
            max_physical: rows.iter().map(|r| r.physical_nodes).max().unwrap_or(0),
        };
        return ctx.finish("sparsify", json!({ "source": source, "sweep": true }), &summary);
    }
    let budget = a.budget.expect("clap requires --budget without --sweep");
    let s = transforms::sparsify(&g, budget, a.lambda)?;
    ctx.write("sparsified.ising", s.physical.to_text())?;
    ctx.write_json("chains.json", &s.chains)?;
    let m = transforms::growth_metrics(&g, &s.physical);
    let summary = SparsifySummary {
        budget,
        logical: g.num_spins,
        physical: s.num_physical(),
        lambda: s.lambda,
        max_degree: s.physical.max_degree(),
        r_n: m.r_n,
        r_s: m.r_s,
        m_orig: m.m_orig,
        m_new: m.m_new,
    };
    ctx.finish("sparsify", json!({ "source": source, "budget": budget, "lambda": s.lambda }), &summary)
}

pub fn tts(ctx: Ctx, a: &Tts) -> Outcome {
    let adjusted = analysis::adjusted_iterations(a.iters, a.group_size);
    let est = analysis::estimate_tts(adjusted, a.n, a.freq, a.overhead)?;
    let config = json!({ "iters": a.iters, "n": a.n, "freq": a.freq, "overhead": a.overhead, "group_size": a.group_size });
    ctx.finish("tts", config, &est)
}

#[derive(Serialize)]
struct StudySummary {
    kind: String,
    file: String,
    rows: usize,
}

#[derive(Serialize)]
struct ReplaySummary {
    file: String,
    identical: bool,
}

pub fn study(ctx: Ctx, a: &Study) -> Outcome {
    if let Some(manifest) = &a.replay {
        let checks = analysis::replay(manifest)?;
        let ok = checks.iter().all(|c| c.identical);
        let rows: Vec<ReplaySummary> =
            checks.into_iter().map(|c| ReplaySummary { file: c.file, identical: c.identical }).collect();
        ctx.print(&rows)?;
        if !ok {
            return Err(Failure::Domain(vcpc::Error::Domain("replayed artifacts differ from the recorded ones".into())));
        }
        return Ok(());
    }
    let path = a.spec.as_ref().expect("clap requires a study file or --replay");
    let mut spec = StudySpec::read(path)?;
    spec.seed = ctx.seed_or(spec.seed);
    let manifest = analysis::run_study(&spec, &ctx.out)?;
    let kind = serde_json::to_value(spec.kind).map_err(vcpc::Error::from)?;
    let rows: Vec<StudySummary> = manifest
        .artifacts
        .iter()
        .map(|art| StudySummary { kind: kind.as_str().unwrap_or_default().to_string(), file: art.file.clone(), rows: art.rows })
        .collect();
    ctx.print(&rows)
}
