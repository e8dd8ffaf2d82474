//! Permutation-matrix QUBO for the TSP.
//!
//! Variable `x(i, t) = i·N + t` is 1 when city `i` sits at tour position `t`.
//! `E = A·Σ_i (1 − Σ_t x_it)² + A·Σ_t (1 − Σ_i x_it)² + B·Σ_{i≠j} D_ij Σ_t x_it x_j,t+1`
//! with positions taken mod `N`.

use serde::{Deserialize, Serialize};

use super::mask::MaskMatrix;
use super::tsplib::TspInstance;
use crate::error::{Error, Result};
use crate::model::{Clamp, ClampMask, EnergyModel};

#[inline]
pub fn var(n: usize, city: usize, pos: usize) -> usize {
    city * n + pos
}

/// Builds the energy and the clamp mask implied by `mask` (zeros clamp to 0).
pub fn encode_tsp(inst: &TspInstance, a: f64, b: f64, mask: Option<&MaskMatrix>) -> Result<(EnergyModel, ClampMask)> {
    let n = inst.num_cities();
    if let Some(m) = mask {
        if m.size() != n {
            return Err(Error::Dimension { expected: n, actual: m.size() });
        }
    }
    let mut builder = EnergyModel::builder(n * n);
    // (1 − Σx)² = 1 − Σx + 2·Σ_{pairs} x x' on binary variables.
    builder.add_constant(2.0 * a * n as f64);
    for i in 0..n {
        for t in 0..n {
            builder.add_term(-2.0 * a, [var(n, i, t)])?;
        }
    }
    for i in 0..n {
        for t in 0..n {
            for u in t + 1..n {
                builder.add_term(2.0 * a, [var(n, i, t), var(n, i, u)])?;
                builder.add_term(2.0 * a, [var(n, t, i), var(n, u, i)])?;
            }
        }
    }
    if n > 1 {
        for i in 0..n {
            for j in 0..n {
                let d = inst.dist(i, j);
                if i == j || d == 0.0 {
                    continue;
                }
                for t in 0..n {
                    builder.add_term(b * d, [var(n, i, t), var(n, j, (t + 1) % n)])?;
                }
            }
        }
    }
    let mut clamp = ClampMask::all_free(n * n);
    if let Some(m) = mask {
        for i in 0..n {
            for t in 0..n {
                if !m.allows(i, t) {
                    clamp.set(var(n, i, t), Clamp::Zero);
                }
            }
        }
    }
    Ok((builder.build(), clamp))
}

/// Closed-form drive at cell `(i, k)`:
/// `A(1 − 2Σ_{t≠k} x_it) + A(1 − 2Σ_{j≠i} x_jk) − B·Σ_{j≠i} D_ij (x_j,k+1 + x_j,k−1)`.
pub fn tsp_update_drive(inst: &TspInstance, a: f64, b: f64, s: &[u8], clamp: &ClampMask, i: usize, k: usize) -> Result<f64> {
    let n = inst.num_cities();
    if s.len() != n * n {
        return Err(Error::Dimension { expected: n * n, actual: s.len() });
    }
    if i >= n || k >= n {
        return Err(Error::Index { index: i.max(k), len: n });
    }
    if !clamp.is_free(var(n, i, k)) {
        return Err(Error::Domain(format!("cell ({i}, {k}) is clamped")));
    }
    let row: usize = (0..n).filter(|&t| t != k).map(|t| s[var(n, i, t)] as usize).sum();
    let col: usize = (0..n).filter(|&j| j != i).map(|j| s[var(n, j, k)] as usize).sum();
    let (next, prev) = ((k + 1) % n, (k + n - 1) % n);
    let cost: f64 = (0..n)
        .filter(|&j| j != i)
        .map(|j| inst.dist(i, j) * (s[var(n, j, next)] as f64 + s[var(n, j, prev)] as f64))
        .sum();
    Ok(a * (1.0 - 2.0 * row as f64) + a * (1.0 - 2.0 * col as f64) - b * cost)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecodedTour {
    /// City at each position; only meaningful when `valid`.
    pub tour: Vec<usize>,
    pub valid: bool,
    /// Closed-tour length; `None` for invalid tours.
    pub cost: Option<f64>,
}

/// Reads a tour from a city×position matrix. Valid iff every row and column
/// holds exactly one 1.
pub fn decode_tour(inst: &TspInstance, s: &[u8]) -> DecodedTour {
    let n = inst.num_cities();
    if s.len() != n * n {
        return DecodedTour { tour: Vec::new(), valid: false, cost: None };
    }
    let row_ok = (0..n).all(|i| (0..n).filter(|&t| s[var(n, i, t)] == 1).count() == 1);
    let col_ok = (0..n).all(|t| (0..n).filter(|&i| s[var(n, i, t)] == 1).count() == 1);
    let valid = row_ok && col_ok;
    let tour: Vec<usize> = (0..n)
        .map(|t| (0..n).find(|&i| s[var(n, i, t)] == 1).unwrap_or(usize::MAX))
        .collect();
    let cost = valid.then(|| inst.tour_cost(&tour));
    DecodedTour { tour, valid, cost }
}

/// The matrix that places `tour[t]` at position `t`.
pub fn tour_to_state(n: usize, tour: &[usize]) -> Vec<u8> {
    let mut s = vec![0u8; n * n];
    for (t, &c) in tour.iter().enumerate() {
        s[var(n, c, t)] = 1;
    }
    s
}

/// Asymptotic coupling density of the permutation encoding, `2/N`.
pub fn tsp_density(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("density needs at least 2 cities, got {n}")));
    }
    Ok(2.0 / n as f64)
}
