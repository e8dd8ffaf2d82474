//! Quality metrics, time-to-solution and reproducible studies.

mod experiments;
mod quality;
mod study;
mod tts;

pub use quality::{iterations_to_quality, quality_curve, Provenance, QualityCurve, Reference, TargetStats};
pub use tts::{adjusted_iterations, estimate_tts, TtsEstimate, DEFAULT_OVERHEAD_CYCLES};
pub use experiments::{
    budget_for, hs_edges, hs_instance, hs_quality_rows, hs_scaling_rows, run_group_sweep, run_hs, run_hubo_vs_qubo,
    run_sg, run_tsp_bench, sg_rows, tsp_costs, GroupSweepRow, HsExperiment, HsOutcome, HsQualityRow, HsReference,
    HsScalingRow, HuboQuboExperiment, HuboQuboRow, SgExperiment, SgOutcome, SgRow, TspBenchInstance, TspMethod,
};
pub use study::{replay, run_study, Artifact, Manifest, OutputSpec, ReferenceEntry, ReplayCheck, Schedule, StudyKind, StudySpec, MANIFEST_FILE};
