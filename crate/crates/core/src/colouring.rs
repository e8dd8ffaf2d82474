//! Conflict graphs and greedy colourings that define parallel update groups.
//!
//! Two free variables conflict when they share a term of order ≥ 2: the
//! update drive of one then reads the other. Variables in one colour class
//! share no term, so the whole class can be resampled from a single state
//! snapshot.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ClampMask, EnergyModel};
use crate::problems::hitting_set::gen_hypergraph;
use crate::rng;

/// Symmetric, loop-free adjacency over the model's variables. Clamped
/// variables are inactive and isolated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    adjacency: Vec<Vec<u32>>,
    active: Vec<bool>,
}

impl ConflictGraph {
    pub fn num_vars(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbours(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.active[v]
    }

    pub fn num_active(&self) -> usize {
        self.active.iter().filter(|a| **a).count()
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&(v as u32)).is_ok()
    }

    /// Plain graph from an edge list; every vertex active.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Index { index: u.max(v), len: n });
            }
            if u != v {
                adjacency[u].push(v as u32);
                adjacency[v].push(u as u32);
            }
        }
        for a in &mut adjacency {
            a.sort_unstable();
            a.dedup();
        }
        Ok(ConflictGraph { adjacency, active: vec![true; n] })
    }
}

/// Build the conflict graph of `model` restricted to the free variables of
/// `clamp`: every pair of free variables sharing a term of order ≥ 2 is
/// adjacent.
pub fn build_conflict_graph(model: &EnergyModel, clamp: &ClampMask) -> Result<ConflictGraph> {
    let n = model.num_vars();
    if clamp.len() != n {
        return Err(Error::Dimension { expected: n, actual: clamp.len() });
    }
    let active: Vec<bool> = (0..n).map(|v| clamp.is_free(v)).collect();
    let mut adjacency = vec![Vec::new(); n];
    let mut free = Vec::new();
    for t in model.terms() {
        if t.vars.len() < 2 {
            continue;
        }
        free.clear();
        free.extend(t.vars.iter().copied().filter(|&v| active[v as usize]));
        for (i, &u) in free.iter().enumerate() {
            for &v in &free[i + 1..] {
                adjacency[u as usize].push(v);
                adjacency[v as usize].push(u);
            }
        }
    }
    for a in &mut adjacency {
        a.sort_unstable();
        a.dedup();
    }
    Ok(ConflictGraph { adjacency, active })
}

/// Partition of the free variables into conflict-free update groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPlan {
    num_vars: usize,
    groups: Vec<Vec<u32>>,
}

impl GroupPlan {
    /// Wraps explicit groups. Groups must be disjoint and within range;
    /// conflict-freedom is the caller's responsibility (see [`GroupPlan::is_valid_for`]).
    pub fn from_groups(num_vars: usize, groups: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = vec![false; num_vars];
        for g in &groups {
            for &v in g {
                let v = v as usize;
                if v >= num_vars {
                    return Err(Error::Index { index: v, len: num_vars });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Config(format!("variable {v} appears in two groups")));
                }
            }
        }
        Ok(GroupPlan { num_vars, groups: groups.into_iter().filter(|g| !g.is_empty()).collect() })
    }

    /// One singleton group per free variable: plain sequential Gibbs.
    pub fn singletons(clamp: &ClampMask) -> Self {
        GroupPlan { num_vars: clamp.len(), groups: clamp.free_vars().map(|v| vec![v as u32]).collect() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn groups(&self) -> &[Vec<u32>] {
        &self.groups
    }

    /// |G|.
    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    /// Number of variables covered by the plan.
    pub fn num_members(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    /// Ḡ, the mean group size (the parallel speed-up factor).
    pub fn avg_group_size(&self) -> f64 {
        if self.groups.is_empty() {
            0.0
        } else {
            self.num_members() as f64 / self.groups.len() as f64
        }
    }

    /// Checks that the plan partitions exactly the free variables of `clamp`
    /// and that no group holds two adjacent vertices of `graph`.
    pub fn is_valid_for(&self, graph: &ConflictGraph, clamp: &ClampMask) -> bool {
        if self.num_vars != graph.num_vars() || self.num_members() != clamp.num_free() {
            return false;
        }
        let mut colour = vec![usize::MAX; self.num_vars];
        for (c, g) in self.groups.iter().enumerate() {
            for &v in g {
                if !clamp.is_free(v as usize) {
                    return false;
                }
                colour[v as usize] = c;
            }
        }
        (0..self.num_vars).all(|v| graph.neighbours(v).iter().all(|&u| colour[u as usize] != colour[v] || colour[v] == usize::MAX))
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }
}

/// Greedy colouring of the active vertices.
///
/// Vertices are visited by descending degree, ties broken by ascending index,
/// and each takes the smallest colour unused among its neighbours, so at most
/// `Δ + 1` colours appear. Groups are listed by colour.
pub fn greedy_colour(graph: &ConflictGraph) -> GroupPlan {
    let n = graph.num_vars();
    let mut order: Vec<usize> = (0..n).filter(|&v| graph.is_active(v)).collect();
    order.sort_by(|&a, &b| graph.degree(b).cmp(&graph.degree(a)).then(a.cmp(&b)));

    let mut colour = vec![usize::MAX; n];
    let mut mark: Vec<usize> = Vec::new();
    let mut groups: Vec<Vec<u32>> = Vec::new();
    for (stamp, &v) in order.iter().enumerate() {
        for &u in graph.neighbours(v) {
            let c = colour[u as usize];
            if c != usize::MAX {
                mark[c] = stamp;
            }
        }
        let c = (0..mark.len()).find(|&c| mark[c] != stamp).unwrap_or(mark.len());
        if c == mark.len() {
            mark.push(usize::MAX);
            groups.push(Vec::new());
        }
        colour[v] = c;
        groups[c].push(v as u32);
    }
    for g in &mut groups {
        g.sort_unstable();
    }
    GroupPlan { num_vars: n, groups }
}

/// Convenience: conflict graph plus greedy colouring.
pub fn plan_groups(model: &EnergyModel, clamp: &ClampMask) -> Result<GroupPlan> {
    Ok(greedy_colour(&build_conflict_graph(model, clamp)?))
}

/// Bollobás' asymptotic chromatic number of `G(n, p)`:
/// `n·ln(1/(1−p)) / (2·ln n)`.
pub fn chromatic_estimate(n: usize, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("edge probability {p} must lie strictly inside (0, 1)")));
    }
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 vertices, got {n}")));
    }
    let n = n as f64;
    Ok(n * (1.0 / (1.0 - p)).ln() / (2.0 * n.ln()))
}

/// One cell of a group-count sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub k: usize,
    pub m: usize,
    pub mean_groups: f64,
    pub std_groups: f64,
}

/// Number of greedy groups of a hypergraph's conflict structure.
///
/// The conflict graph of the encoded hitting-set energy only depends on which
/// vertices share an edge, and every monomial of an edge's expanded penalty is
/// a subset of its top-order product. Colouring the model with just the
/// top-order monomials therefore gives the same groups without the `2^k`
/// expansion.
pub fn hypergraph_group_count(num_vertices: usize, edges: &[Vec<u32>]) -> Result<usize> {
    let mut b = EnergyModel::builder(num_vertices);
    for e in edges {
        b.add_term(1.0, e.iter().copied())?;
    }
    let model = b.build();
    Ok(plan_groups(&model, &ClampMask::all_free(num_vertices))?.num_groups())
}

/// Mean and standard deviation of the greedy group count over `samples`
/// random `k`-uniform hypergraphs with `m` edges on `n` vertices, for every
/// `(k, m)` pair. Cells with `k > n` are skipped.
pub fn group_count_sweep(
    n: usize,
    k_range: &[usize],
    m_range: &[usize],
    samples: usize,
    seed: u64,
) -> Result<Vec<SweepCell>> {
    use rayon::prelude::*;
    if k_range.is_empty() || m_range.is_empty() || samples == 0 {
        return Err(Error::Config("sweep ranges and sample count must be non-empty".into()));
    }
    let cells: Vec<(usize, usize)> = k_range
        .iter()
        .flat_map(|&k| m_range.iter().map(move |&m| (k, m)))
        .filter(|&(k, _)| k >= 1 && k <= n)
        .collect();
    cells
        .par_iter()
        .map(|&(k, m)| {
            let counts = (0..samples)
                .map(|i| {
                    let s = rng::derive_seed(seed, &[rng::tag::SAMPLE, k as u64, m as u64, i as u64]);
                    let edges = if m == 0 { Vec::new() } else { gen_hypergraph(n, m, k, s)?.edges };
                    hypergraph_group_count(n, &edges)
                })
                .collect::<Result<Vec<_>>>()?;
            let (mean, std) = mean_std(counts.iter().map(|&c| c as f64));
            Ok(SweepCell { k, m, mean_groups: mean, std_groups: std })
        })
        .collect()
}

/// Sample mean and (population) standard deviation.
pub(crate) fn mean_std(xs: impl IntoIterator<Item = f64>) -> (f64, f64) {
    let xs: Vec<f64> = xs.into_iter().collect();
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Emit sweep cells as CSV with columns `k,m,mean_groups,std_groups`.
pub fn write_sweep_csv<W: Write>(cells: &[SweepCell], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for c in cells {
        w.serialize(c)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> ConflictGraph {
        ConflictGraph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn triangle_term_needs_three_groups() {
        let mut b = EnergyModel::builder(3);
        b.add_term(1.0, [0u32, 1, 2]).unwrap();
        let m = b.build();
        let g = build_conflict_graph(&m, &ClampMask::all_free(3)).unwrap();
        assert_eq!(g.num_edges(), 3);
        assert_eq!(greedy_colour(&g).num_groups(), 3);
    }

    #[test]
    fn linear_model_is_one_group() {
        let mut b = EnergyModel::builder(4);
        for v in 0..4u32 {
            b.add_term(1.0, [v]).unwrap();
        }
        let plan = plan_groups(&b.build(), &ClampMask::all_free(4)).unwrap();
        assert_eq!(plan.num_groups(), 1);
        assert_eq!(plan.avg_group_size(), 4.0);
    }

    #[test]
    fn small_graphs() {
        assert_eq!(greedy_colour(&complete(4)).num_groups(), 4);
        let path = ConflictGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let plan = greedy_colour(&path);
        assert_eq!(plan.groups(), &[vec![1], vec![0, 2]]);
    }

    #[test]
    fn clamped_variables_are_excluded() {
        let mut b = EnergyModel::builder(3);
        b.add_term(1.0, [0u32, 1, 2]).unwrap();
        let m = b.build();
        let mut clamp = ClampMask::all_free(3);
        clamp.set(1, crate::model::Clamp::Zero);
        let g = build_conflict_graph(&m, &clamp).unwrap();
        assert_eq!(g.degree(1), 0);
        assert!(g.contains_edge(0, 2));
        let plan = greedy_colour(&g);
        assert_eq!(plan.num_members(), 2);
        assert!(plan.is_valid_for(&g, &clamp));
    }

    #[test]
    fn chromatic_formula() {
        assert!((chromatic_estimate(100, 0.5).unwrap() - 7.525749891599529).abs() < 1e-12);
        assert!((chromatic_estimate(10, 0.9).unwrap() - 5.0).abs() < 1e-12);
        assert!(chromatic_estimate(100, 1e-12).unwrap() < 1e-9);
        assert!(chromatic_estimate(10, 0.0).is_err());
        assert!(chromatic_estimate(10, 1.0).is_err());
        assert!(chromatic_estimate(1, 0.5).is_err());
    }

    #[test]
    fn sweep_edge_cases() {
        let cells = group_count_sweep(8, &[2, 8], &[0, 1], 2, 3).unwrap();
        let get = |k, m| cells.iter().find(|c| c.k == k && c.m == m).unwrap().mean_groups;
        assert_eq!(get(2, 0), 1.0);
        assert_eq!(get(8, 1), 8.0);
        assert_eq!(get(2, 1), 2.0);
    }

    #[test]
    fn sweep_csv_header() {
        let mut buf = Vec::new();
        write_sweep_csv(&[SweepCell { k: 2, m: 0, mean_groups: 1.0, std_groups: 0.0 }], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "k,m,mean_groups,std_groups\n2,0,1.0,0.0\n");
    }
}
