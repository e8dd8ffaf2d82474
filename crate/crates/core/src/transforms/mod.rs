//! Model transforms: quadratisation and neighbour-budget sparsification.

mod quadratise;
mod sparsify;

pub use quadratise::{quadratise, rosenberg_penalty, QuadratisationResult, QuadratisationSummary};
pub use sparsify::{
    copies_needed, default_lambda, growth_metrics, sparsify, sparsify_sweep, write_sparsify_csv, GrowthMetrics, SparsifiedGraph,
    SparsifyRow,
};
