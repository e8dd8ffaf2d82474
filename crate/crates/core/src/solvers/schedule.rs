//! Inverse-temperature schedules.

use serde::{Deserialize, Serialize};

/// `n` evenly spaced values from `start` to `end`; `n == 1` gives `[start]`.
pub fn linear_schedule(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let last = (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { end } else { start + (end - start) * (i as f64 / last) })
                .collect()
        }
    }
}

/// `n` values with constant ratio from `start` to `end`. Both must be positive.
pub fn geometric_schedule(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let ratio = (end / start).ln() / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { end } else { start * (ratio * i as f64).exp() })
                .collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Geometric,
}

impl Spacing {
    pub fn schedule(self, start: f64, end: f64, n: usize) -> Vec<f64> {
        match self {
            Spacing::Linear => linear_schedule(start, end, n),
            Spacing::Geometric => geometric_schedule(start, end, n),
        }
    }
}
