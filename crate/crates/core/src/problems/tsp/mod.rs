//! Travelling salesperson: TSPLIB input, permutation-matrix QUBO, cluster
//! masks and the coarse-to-fine pipeline.

mod encode;
mod held_karp;
mod kmeans;
mod mask;
mod pipeline;
mod tsplib;

pub use encode::{decode_tour, encode_tsp, tour_to_state, tsp_density, tsp_update_drive, var, DecodedTour};
pub use held_karp::{held_karp, MAX_HELD_KARP};
pub use kmeans::{build_cluster_tree, kmeans, ClusterTree, KMeans};
pub use mask::{build_mask, MaskMatrix};
pub use pipeline::{format_tour, kmc_pipeline, solve_tsp, write_bench_csv, KmcConfig, KmcOutcome, LevelReport, TspBenchRow};
pub use tsplib::{bundled, bundled_names, bundled_optimum, pair_distance, parse_tsplib, read_tsplib, EdgeWeight, TspInstance};
