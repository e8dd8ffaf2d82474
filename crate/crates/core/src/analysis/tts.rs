//! Time-to-solution from group-adjusted iterations and a cycle model.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cycles per group update beyond the `log2 N` adder tree.
pub const DEFAULT_OVERHEAD_CYCLES: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TtsEstimate {
    pub adjusted_iters: f64,
    pub n: usize,
    pub f_hz: f64,
    pub overhead_cycles: f64,
    pub cycles_per_iter: f64,
    pub seconds: f64,
}

/// `adjusted_iters · (log2 N + overhead) / f`.
pub fn estimate_tts(adjusted_iters: f64, n: usize, f_hz: f64, overhead_cycles: f64) -> Result<TtsEstimate> {
    if !(adjusted_iters >= 0.0 && f_hz > 0.0 && overhead_cycles >= 0.0 && n >= 1) {
        return Err(Error::Domain("iterations, frequency and overhead must be non-negative, frequency positive".into()));
    }
    let cycles_per_iter = (n as f64).log2() + overhead_cycles;
    Ok(TtsEstimate {
        adjusted_iters,
        n,
        f_hz,
        overhead_cycles,
        cycles_per_iter,
        seconds: adjusted_iters * cycles_per_iter / f_hz,
    })
}

/// Single-variable updates divided by the mean group size.
pub fn adjusted_iterations(single_updates: f64, avg_group_size: f64) -> f64 {
    single_updates / avg_group_size
}
