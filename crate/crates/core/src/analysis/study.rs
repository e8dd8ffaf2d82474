//! Study files: one TOML file describes an experiment, running it writes a
//! CSV and a JSON manifest that can regenerate the CSV.
//!
//! ```toml
//! kind = "hs-scaling"
//! seed = 7
//!
//! [problem]
//! k = 5
//! sizes = [50, 100, 200]
//! instances = 100
//!
//! [solver.sa]
//! temp_range = [0.01, 1.1]
//! steps = 100
//! iters = 1
//! reps = 20
//!
//! [schedule]
//! iters_per_n = 5
//! targets = [1.2, 1.1, 1.05]
//!
//! [output]
//! name = "hs_scaling"
//! ```

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::experiments::{
    hs_quality_rows, hs_scaling_rows, run_group_sweep, run_hs, run_hubo_vs_qubo, run_sg, run_tsp_bench, sg_rows,
    HsExperiment, HsReference, HuboQuboExperiment, SgExperiment, TspBenchInstance, TspMethod,
};
use super::quality::Reference;
use crate::error::{Error, Result};
use crate::problems::hitting_set::{DEFAULT_A, DEFAULT_B};
use crate::problems::spinglass::{gen_er, qubo_to_ising, ErSpec, IsingInstance};
use crate::problems::tsp::{bundled, encode_tsp, read_tsplib};
use crate::rng::{derive_seed, tag};
use crate::solvers::{SolverConfig, SolverFile};
use crate::transforms::sparsify_sweep;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StudyKind {
    HsScaling,
    HsQuality,
    HuboVsQubo,
    GroupSweep,
    SgEr,
    TspBench,
    Sparsify,
}

impl StudyKind {
    fn default_name(self) -> &'static str {
        match self {
            StudyKind::HsScaling => "hs_scaling",
            StudyKind::HsQuality => "hs_quality",
            StudyKind::HuboVsQubo => "hubo_vs_qubo",
            StudyKind::GroupSweep => "group_sweep",
            StudyKind::SgEr => "sg_er",
            StudyKind::TspBench => "tsp_bench",
            StudyKind::Sparsify => "sparsify",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schedule {
    /// Group updates per repeat, per problem variable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iters_per_n: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub targets: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// CSV file stem; defaults to the study kind.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Record wall-clock time in the manifest. Off by default so manifests
    /// are reproducible byte for byte.
    #[serde(default)]
    pub timings: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudySpec {
    pub kind: StudyKind,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub problem: toml::Table,
    #[serde(default)]
    pub solver: SolverFile,
    #[serde(default)]
    pub schedule: Schedule,
    #[serde(default)]
    pub output: OutputSpec,
}

impl StudySpec {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn csv_name(&self) -> String {
        format!("{}.csv", self.output.name.as_deref().unwrap_or(self.kind.default_name()))
    }

    fn problem<T: DeserializeOwned>(&self) -> Result<T> {
        self.problem.clone().try_into().map_err(|e| Error::Config(format!("[problem]: {e}")))
    }

    fn sa(&self) -> Result<SolverConfig> {
        self.solver
            .sa
            .clone()
            .map(SolverConfig::Sa)
            .ok_or_else(|| Error::Config(format!("{:?} study needs a [solver.sa] table", self.kind)))
    }

    /// The single solver of a study that takes one.
    fn only_solver(&self) -> Result<SolverConfig> {
        match (&self.solver.sa, &self.solver.pt) {
            (Some(sa), None) => Ok(SolverConfig::Sa(sa.clone())),
            (None, Some(pt)) => Ok(SolverConfig::Pt(pt.clone())),
            _ => Err(Error::Config("give exactly one of [solver.sa] or [solver.pt]".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Artifact {
    pub file: String,
    pub rows: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceEntry {
    pub label: String,
    #[serde(flatten)]
    pub reference: Reference,
}

/// Everything needed to regenerate a study's outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub spec: StudySpec,
    pub artifacts: Vec<Artifact>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub references: Vec<ReferenceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_seconds: Option<f64>,
}

impl Manifest {
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

fn default_edges_per_vertex() -> f64 {
    1.0
}

fn default_a() -> f64 {
    DEFAULT_A
}

fn default_b() -> f64 {
    DEFAULT_B
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HsProblem {
    k: usize,
    sizes: Vec<usize>,
    instances: usize,
    #[serde(default = "default_edges_per_vertex")]
    edges_per_vertex: f64,
    #[serde(default = "default_a", rename = "A")]
    a: f64,
    #[serde(default = "default_b", rename = "B")]
    b: f64,
    #[serde(default)]
    reference: HsReference,
    #[serde(default)]
    strength_factors: Vec<f64>,
}

impl HsProblem {
    fn experiment(&self, iters_per_n: Option<f64>) -> HsExperiment {
        HsExperiment {
            k: self.k,
            sizes: self.sizes.clone(),
            instances: self.instances,
            edges_per_vertex: self.edges_per_vertex,
            a: self.a,
            b: self.b,
            reference: self.reference,
            iters_per_n,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SgProblem {
    sizes: Vec<usize>,
    densities: Vec<f64>,
    instances: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepProblem {
    sizes: Vec<usize>,
    k: Vec<usize>,
    m: Vec<usize>,
    samples: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TspProblem {
    instances: Vec<TspBenchInstance>,
    methods: Vec<TspMethod>,
    runs: usize,
    #[serde(default = "default_tsp_b", rename = "B")]
    b: f64,
}

fn default_tsp_b() -> f64 {
    1.0
}

#[derive(Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case", deny_unknown_fields)]
enum SparsifyProblem {
    Er {
        n: usize,
        p: f64,
        #[serde(default)]
        budgets: Vec<usize>,
    },
    Tsp {
        instance: String,
        #[serde(default)]
        path: Option<String>,
        #[serde(rename = "A")]
        a: f64,
        #[serde(default = "default_tsp_b", rename = "B")]
        b: f64,
        #[serde(default)]
        budgets: Vec<usize>,
    },
    File {
        path: String,
        #[serde(default)]
        budgets: Vec<usize>,
    },
}

impl SparsifyProblem {
    fn graph(&self, seed: u64) -> Result<(IsingInstance, &[usize])> {
        match self {
            SparsifyProblem::Er { n, p, budgets } => {
                let g = gen_er(ErSpec { n: *n, p: *p }, derive_seed(seed, &[tag::INSTANCE]))?;
                Ok((g, budgets))
            }
            SparsifyProblem::Tsp { instance, path, a, b, budgets } => {
                let inst = match path {
                    Some(p) => read_tsplib(p)?,
                    None => bundled(instance).ok_or_else(|| Error::Config(format!("unknown bundled instance {instance:?}")))?,
                };
                let (model, _) = encode_tsp(&inst, *a, *b, None)?;
                Ok((qubo_to_ising(&model)?.0, budgets))
            }
            SparsifyProblem::File { path, budgets } => Ok((IsingInstance::read(path)?, budgets)),
        }
    }
}

fn write_rows<T: Serialize>(rows: &[T], path: &Path) -> Result<usize> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(rows.len())
}

fn reference_label(n: usize, i: usize) -> String {
    format!("N={n}/instance={i}")
}

/// Runs `spec`, writing its CSV and manifest into `out_dir`.
pub fn run_study(spec: &StudySpec, out_dir: &Path) -> Result<Manifest> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let start = Instant::now();
    let csv_name = spec.csv_name();
    let csv_path = out_dir.join(&csv_name);
    let seed = spec.seed;
    let mut references = Vec::new();
    let rows = match spec.kind {
        StudyKind::HsScaling | StudyKind::HsQuality => {
            let p: HsProblem = spec.problem()?;
            let exp = p.experiment(spec.schedule.iters_per_n);
            let solver = spec.only_solver()?;
            let out = run_hs(&exp, &solver, seed)?;
            references.extend(out.iter().map(|o| ReferenceEntry {
                label: reference_label(o.n, o.instance),
                reference: Reference { value: o.reference.value / exp.b, provenance: o.reference.provenance },
            }));
            if spec.kind == StudyKind::HsScaling {
                let targets = targets_or(&spec.schedule.targets, &[1.2, 1.1, 1.05, 1.0]);
                write_rows(&hs_scaling_rows(&out, &targets)?, &csv_path)?
            } else {
                let target = spec.schedule.targets.first().copied().unwrap_or(1.05);
                write_rows(&hs_quality_rows(&exp, &solver, &out, target)?, &csv_path)?
            }
        }
        StudyKind::HuboVsQubo => {
            let p: HsProblem = spec.problem()?;
            let factors = if p.strength_factors.is_empty() { vec![1.0] } else { p.strength_factors.clone() };
            let exp = HuboQuboExperiment {
                hs: p.experiment(None),
                strength_factors: factors,
                iters_per_var: spec.schedule.iters_per_n.unwrap_or(5.0),
            };
            write_rows(&run_hubo_vs_qubo(&exp, &spec.sa()?, seed)?, &csv_path)?
        }
        StudyKind::GroupSweep => {
            let p: SweepProblem = spec.problem()?;
            write_rows(&run_group_sweep(&p.sizes, &p.k, &p.m, p.samples, seed)?, &csv_path)?
        }
        StudyKind::SgEr => {
            let p: SgProblem = spec.problem()?;
            let exp = SgExperiment { sizes: p.sizes, densities: p.densities, instances: p.instances };
            let out = run_sg(&exp, &spec.only_solver()?, seed)?;
            references.extend(out.iter().map(|o| ReferenceEntry {
                label: format!("{}/p={}", reference_label(o.n, o.instance), o.p),
                reference: o.reference,
            }));
            let targets = targets_or(&spec.schedule.targets, &[0.8, 0.9, 0.95, 1.0]);
            write_rows(&sg_rows(&exp, &out, &targets)?, &csv_path)?
        }
        StudyKind::TspBench => {
            let p: TspProblem = spec.problem()?;
            let sa = spec.solver.sa.clone().map(SolverConfig::Sa);
            let pt = spec.solver.pt.clone().map(SolverConfig::Pt);
            let (rows, refs) = run_tsp_bench(&p.instances, &p.methods, sa.as_ref(), pt.as_ref(), p.b, p.runs, seed)?;
            references.extend(refs.into_iter().map(|(label, reference)| ReferenceEntry { label, reference }));
            write_rows(&rows, &csv_path)?
        }
        StudyKind::Sparsify => {
            let p: SparsifyProblem = spec.problem()?;
            let (g, budgets) = p.graph(seed)?;
            write_rows(&sparsify_sweep(&g, budgets)?, &csv_path)?
        }
    };
    let manifest = Manifest {
        tool: "vcpc".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        spec: spec.clone(),
        artifacts: vec![Artifact { file: csv_name, rows }],
        references,
        wall_seconds: spec.output.timings.then(|| start.elapsed().as_secs_f64()),
    };
    let path = out_dir.join(MANIFEST_FILE);
    fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n").map_err(|e| Error::io(&path, e))?;
    Ok(manifest)
}

fn targets_or(given: &[f64], default: &[f64]) -> Vec<f64> {
    if given.is_empty() {
        default.to_vec()
    } else {
        given.to_vec()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayCheck {
    pub file: String,
    pub identical: bool,
}

/// Re-runs the study recorded in `manifest_path` in a scratch directory and
/// compares every artifact byte for byte against the recorded one.
pub fn replay(manifest_path: &Path) -> Result<Vec<ReplayCheck>> {
    let manifest = Manifest::read(manifest_path)?;
    let dir = manifest_path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
    let scratch = dir.join(format!(".replay-{}", std::process::id()));
    let outcome = run_study(&manifest.spec, &scratch).and_then(|_| {
        manifest
            .artifacts
            .iter()
            .map(|a| {
                let original = dir.join(&a.file);
                let before = fs::read(&original).map_err(|e| Error::io(&original, e))?;
                let again = scratch.join(&a.file);
                let after = fs::read(&again).map_err(|e| Error::io(&again, e))?;
                Ok(ReplayCheck { file: a.file.clone(), identical: before == after })
            })
            .collect()
    });
    let _ = fs::remove_dir_all(&scratch);
    outcome
}

#[cfg(test)]
mod tests {
    use super::*;

    const SWEEP: &str = "kind = \"group-sweep\"\nseed = 3\n[problem]\nsizes = [30]\nk = [2, 3]\nm = [0, 10]\nsamples = 3\n";

    #[test]
    fn unknown_kind_is_rejected() {
        let e = StudySpec::parse("kind = \"nope\"\n").unwrap_err();
        assert!(matches!(e, Error::Config(_)));
    }

    #[test]
    fn unknown_problem_field_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let spec = StudySpec::parse(&format!("{SWEEP}bogus = 1\n")).unwrap();
        assert!(run_study(&spec, dir.path()).is_err());
    }

    #[test]
    fn sweep_study_writes_csv_and_replays() {
        let dir = tempfile::tempdir().unwrap();
        let spec = StudySpec::parse(SWEEP).unwrap();
        let m = run_study(&spec, dir.path()).unwrap();
        assert_eq!(m.artifacts, vec![Artifact { file: "group_sweep.csv".into(), rows: 4 }]);
        let text = fs::read_to_string(dir.path().join("group_sweep.csv")).unwrap();
        assert!(text.starts_with("N,k,m,mean_groups,std_groups\n"));
        let checks = replay(&dir.path().join(MANIFEST_FILE)).unwrap();
        assert!(checks.iter().all(|c| c.identical));
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
    }

    #[test]
    fn manifest_round_trips_through_json() {
        let dir = tempfile::tempdir().unwrap();
        let spec = StudySpec::parse(
            "kind = \"hs-quality\"\nseed = 1\n[problem]\nk = 3\nsizes = [10]\ninstances = 2\nA = 13\n\
             [solver.sa]\ntemp_range = [0.01, 1.1]\nsteps = 10\niters = 1\nreps = 2\n[schedule]\niters_per_n = 5\n",
        )
        .unwrap();
        let m = run_study(&spec, dir.path()).unwrap();
        assert_eq!(Manifest::read(dir.path().join(MANIFEST_FILE)).unwrap(), m);
        assert_eq!(m.references.len(), 2);
        assert!(m.wall_seconds.is_none());
    }

    #[test]
    fn sparsify_from_er_starts_at_identity() {
        let dir = tempfile::tempdir().unwrap();
        let spec = StudySpec::parse("kind = \"sparsify\"\n[problem]\nsource = \"er\"\nn = 12\np = 0.6\n").unwrap();
        run_study(&spec, dir.path()).unwrap();
        let mut r = csv::Reader::from_path(dir.path().join("sparsify.csv")).unwrap();
        let first = r.records().next().unwrap().unwrap();
        assert_eq!((&first[2], &first[3]), ("1.0", "1.0"));
    }
}
