//! Degree-bounded copies of high-degree nodes, linked in ferromagnetic chains.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::spinglass::IsingInstance;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparsifiedGraph {
    pub physical: IsingInstance,
    /// Physical copies of each logical node, in chain order.
    pub chains: Vec<Vec<u32>>,
    pub lambda: f64,
    pub budget: usize,
}

impl SparsifiedGraph {
    pub fn num_physical(&self) -> usize {
        self.physical.num_spins
    }

    /// Logical spins read from the first copy, plus whether every chain is
    /// internally aligned.
    pub fn project(&self, sigma: &[i8]) -> (Vec<i8>, bool) {
        let logical = self.chains.iter().map(|c| sigma[c[0] as usize]).collect();
        let intact = self.chains.iter().all(|c| c.iter().all(|&p| sigma[p as usize] == sigma[c[0] as usize]));
        (logical, intact)
    }

    /// Every copy takes its logical spin.
    pub fn lift(&self, logical: &[i8]) -> Vec<i8> {
        let mut out = vec![0i8; self.num_physical()];
        for (c, &s) in self.chains.iter().zip(logical) {
            for &p in c {
                out[p as usize] = s;
            }
        }
        out
    }
}

/// Number of chain copies needed for degree `d` under budget `k`.
pub fn copies_needed(d: usize, k: usize) -> usize {
    if d <= k {
        1
    } else {
        (d - 2).div_ceil(k - 2)
    }
}

/// `2·max|w|·(k − 1)`.
pub fn default_lambda(g: &IsingInstance, budget: usize) -> f64 {
    let w = g.couplings.iter().map(|c| c.2.abs()).fold(0.0, f64::max);
    2.0 * w * (budget as f64 - 1.0)
}

/// Replaces each node of degree `d > k` by a chain of
/// `ceil((d − 2)/(k − 2))` copies. Chain ends keep `k − 1` slots for original
/// edges and interior copies `k − 2`; a node's edges are dealt to its copies
/// round-robin in edge order, skipping full copies. Chain links carry
/// coupling `λ` and the node's field sits on its first copy.
pub fn sparsify(g: &IsingInstance, budget: usize, lambda: Option<f64>) -> Result<SparsifiedGraph> {
    if budget < 3 {
        return Err(Error::Infeasible(format!("neighbour budget {budget} is too small for chains (need >= 3)")));
    }
    let lambda = lambda.unwrap_or_else(|| default_lambda(g, budget));
    if !(lambda > 0.0 && lambda.is_finite()) && !g.couplings.is_empty() {
        return Err(Error::Config(format!("chain coupling must be positive, got {lambda}")));
    }
    let n = g.num_spins;
    let deg = g.degrees();
    let mut chains = Vec::with_capacity(n);
    let mut next = 0u32;
    for &d in &deg {
        let c = copies_needed(d, budget) as u32;
        chains.push((next..next + c).collect::<Vec<u32>>());
        next += c;
    }
    let capacity = |c: usize, i: usize| match c {
        1 => budget,
        _ if i == 0 || i == c - 1 => budget - 1,
        _ => budget - 2,
    };
    let mut used: Vec<Vec<usize>> = chains.iter().map(|c| vec![0; c.len()]).collect();
    let mut cursor = vec![0usize; n];
    let mut take = |v: usize| -> u32 {
        let c = chains[v].len();
        while used[v][cursor[v]] >= capacity(c, cursor[v]) {
            cursor[v] = (cursor[v] + 1) % c;
        }
        let slot = cursor[v];
        used[v][slot] += 1;
        cursor[v] = (slot + 1) % c;
        chains[v][slot]
    };
    let mut couplings = Vec::with_capacity(g.couplings.len() + next as usize);
    for &(i, j, w) in &g.couplings {
        let a = take(i as usize);
        let b = take(j as usize);
        couplings.push((a, b, w));
    }
    let mut fields = vec![0.0; next as usize];
    for (v, c) in chains.iter().enumerate() {
        fields[c[0] as usize] = g.fields[v];
        for w in c.windows(2) {
            couplings.push((w[0], w[1], lambda));
        }
    }
    let physical = IsingInstance::new(next as usize, couplings, fields)?;
    Ok(SparsifiedGraph { physical, chains, lambda, budget })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthMetrics {
    pub r_n: f64,
    pub r_s: f64,
    pub m_orig: f64,
    pub m_new: f64,
}

/// `r_N = |V_s|/|V|`, `r_S = Δ/Δ_s`, and both densities `2|E|/(|V|(|V|−1))`.
pub fn growth_metrics(original: &IsingInstance, transformed: &IsingInstance) -> GrowthMetrics {
    let (d0, d1) = (original.max_degree(), transformed.max_degree());
    GrowthMetrics {
        r_n: transformed.num_spins as f64 / original.num_spins as f64,
        r_s: if d1 == 0 { 1.0 } else { d0 as f64 / d1 as f64 },
        m_orig: original.density(),
        m_new: transformed.density(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparsifyRow {
    pub k: usize,
    pub physical_nodes: usize,
    #[serde(rename = "r_N")]
    pub r_n: f64,
    #[serde(rename = "r_S")]
    pub r_s: f64,
}

/// One row per budget. Without budgets, sweeps from the maximum degree down
/// to 3, so the first row is the identity point.
pub fn sparsify_sweep(g: &IsingInstance, budgets: &[usize]) -> Result<Vec<SparsifyRow>> {
    let budgets: Vec<usize> = if budgets.is_empty() { (3..=g.max_degree().max(3)).rev().collect() } else { budgets.to_vec() };
    budgets
        .iter()
        .map(|&k| {
            let s = sparsify(g, k, None)?;
            let m = growth_metrics(g, &s.physical);
            Ok(SparsifyRow { k, physical_nodes: s.num_physical(), r_n: m.r_n, r_s: m.r_s })
        })
        .collect()
}

pub fn write_sparsify_csv<W: Write>(rows: &[SparsifyRow], out: W) -> Result<()> {
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
    use crate::problems::spinglass::{gen_er, ErSpec};

    fn k5() -> IsingInstance {
        gen_er(ErSpec { n: 5, p: 1.0 }, 0).unwrap()
    }

    #[test]
    fn k5_budget_three() {
        let s = sparsify(&k5(), 3, None).unwrap();
        assert_eq!(s.num_physical(), 10);
        assert!(s.physical.max_degree() <= 3);
        let m = growth_metrics(&k5(), &s.physical);
        assert_eq!((m.r_n, m.r_s), (2.0, 4.0 / 3.0));
    }

    #[test]
    fn within_budget_is_identity() {
        let g = k5();
        let s = sparsify(&g, 4, None).unwrap();
        assert_eq!(s.physical, g);
        let m = growth_metrics(&g, &s.physical);
        assert_eq!((m.r_n, m.r_s), (1.0, 1.0));
        assert_eq!(m.m_orig, m.m_new);
    }

    #[test]
    fn budget_must_allow_chains() {
        assert!(sparsify(&k5(), 2, None).is_err());
    }

    #[test]
    fn copy_counts() {
        assert_eq!(copies_needed(4, 3), 2);
        assert_eq!(copies_needed(99, 9), 14);
        assert_eq!(copies_needed(9, 9), 1);
    }

    #[test]
    fn lift_and_project() {
        let s = sparsify(&k5(), 3, None).unwrap();
        let logical = vec![1, -1, 1, 1, -1];
        let phys = s.lift(&logical);
        assert_eq!(s.project(&phys), (logical.clone(), true));
        assert_eq!(s.physical.energy(&phys).unwrap(), k5().energy(&logical).unwrap() - 5.0 * s.lambda);
    }

    #[test]
    fn sweep_starts_at_identity() {
        let rows = sparsify_sweep(&k5(), &[]).unwrap();
        assert_eq!((rows[0].k, rows[0].r_n, rows[0].r_s), (4, 1.0, 1.0));
        assert_eq!(rows.last().unwrap().k, 3);
    }
}
