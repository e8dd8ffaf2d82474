//! Minimum hitting set on hypergraphs as a higher-order binary energy.

use std::collections::HashSet;
use std::path::Path;

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{EnergyModel, State, MAX_EXACT_VARS};
use crate::rng;

pub const DEFAULT_A: f64 = 13.0;
pub const DEFAULT_B: f64 = 9.0;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    pub num_vertices: usize,
    /// Each edge is a sorted list of distinct vertices.
    pub edges: Vec<Vec<u32>>,
}

impl Hypergraph {
    pub fn new(num_vertices: usize, edges: Vec<Vec<u32>>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return Err(Error::Domain("hyperedge must be non-empty".into()));
            }
            if let Some(&v) = e.last().filter(|&&v| v as usize >= num_vertices) {
                return Err(Error::Index { index: v as usize, len: num_vertices });
            }
            out.push(e);
        }
        Ok(Hypergraph { num_vertices, edges: out })
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Size of the largest edge.
    pub fn dimension(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// For each vertex, the edges containing it.
    pub fn incidence(&self) -> Vec<Vec<u32>> {
        let mut inc = vec![Vec::new(); self.num_vertices];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v as usize].push(i as u32);
            }
        }
        inc
    }

    /// Whether the chosen vertices hit every edge.
    pub fn is_hit_by(&self, s: &[u8]) -> bool {
        self.edges.iter().all(|e| e.iter().any(|&v| s[v as usize] == 1))
    }

    /// Number of edges with no chosen vertex.
    pub fn unhit_edges(&self, s: &[u8]) -> usize {
        self.edges.iter().filter(|e| e.iter().all(|&v| s[v as usize] == 0)).count()
    }

    /// Parses `N m` followed by `m` lines of vertex indices.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `N m` header"))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(ln, format!("bad integer `{t}`"))))
            .collect::<Result<_>>()?;
        let [n, m] = nums[..] else {
            return Err(Error::parse(ln, "header must be `N m`"));
        };
        let mut edges = Vec::with_capacity(m);
        for (ln, l) in lines {
            let e = l
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| Error::parse(ln, format!("bad vertex `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            edges.push(e);
        }
        if edges.len() != m {
            return Err(Error::parse(0, format!("header declares {m} edges, found {}", edges.len())));
        }
        Hypergraph::new(n, edges)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.num_vertices, self.edges.len());
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(u32::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

/// `m` distinct edges, each a uniform `k`-subset of `N` vertices.
pub fn gen_hypergraph(n: usize, m: usize, k: usize, seed: u64) -> Result<Hypergraph> {
    if k == 0 || k > n {
        return Err(Error::Infeasible(format!("edge size {k} impossible on {n} vertices")));
    }
    if m == 0 {
        return Err(Error::Domain("need at least one edge".into()));
    }
    if let Some(c) = binomial(n, k) {
        if (m as u128) > c {
            return Err(Error::Infeasible(format!("only {c} distinct {k}-subsets of {n} vertices")));
        }
    }
    let mut r = rng::stream(seed, &[rng::tag::INSTANCE]);
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let mut e: Vec<u32> = sample(&mut r, n, k).into_iter().map(|v| v as u32).collect();
        e.sort_unstable();
        if seen.insert(e.clone()) {
            edges.push(e);
        }
    }
    Ok(Hypergraph { num_vertices: n, edges })
}

fn binomial(n: usize, k: usize) -> Option<u128> {
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(c)
}

/// `A·Σ_r Π_{v∈r}(1−s_v) + B·Σ_v s_v`, expanded into monomials.
///
/// Each product over an edge of size `k` expands to `Σ_{T⊆r} (−1)^{|T|} Π_{v∈T} s_v`.
pub fn encode_hitting_set(h: &Hypergraph, a: f64, b: f64) -> Result<EnergyModel> {
    if !(b > 0.0 && a > b) {
        return Err(Error::Config(format!("need A > B > 0, got A={a}, B={b}")));
    }
    let mut builder = EnergyModel::builder(h.num_vertices);
    for v in 0..h.num_vertices {
        builder.add_term(b, [v])?;
    }
    let mut subset = Vec::new();
    for e in &h.edges {
        if e.len() > 30 {
            return Err(Error::Capacity { what: "hyperedge size for expansion".into(), limit: 30 });
        }
        for mask in 0u64..(1u64 << e.len()) {
            subset.clear();
            subset.extend((0..e.len()).filter(|i| mask >> i & 1 == 1).map(|i| e[i]));
            let sign = if subset.len() % 2 == 0 { 1.0 } else { -1.0 };
            builder.add_term(sign * a, subset.iter().copied())?;
        }
    }
    Ok(builder.build())
}

/// `A·Σ_{r∋v} Π_{u∈r, u≠v}(1−s_u) − B`, straight from the hypergraph.
pub fn hs_update_drive(
    h: &Hypergraph,
    incidence: &[Vec<u32>],
    a: f64,
    b: f64,
    s: &[u8],
    vertex: usize,
) -> Result<f64> {
    if vertex >= h.num_vertices {
        return Err(Error::Index { index: vertex, len: h.num_vertices });
    }
    if s.len() != h.num_vertices {
        return Err(Error::Dimension { expected: h.num_vertices, actual: s.len() });
    }
    let open = incidence[vertex]
        .iter()
        .filter(|&&r| h.edges[r as usize].iter().all(|&u| u as usize == vertex || s[u as usize] == 0))
        .count();
    Ok(a * open as f64 - b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HittingSetSolution {
    pub chosen: Vec<u32>,
    pub valid: bool,
}

impl HittingSetSolution {
    pub fn from_state(h: &Hypergraph, s: &[u8]) -> Self {
        HittingSetSolution {
            chosen: (0..s.len()).filter(|&v| s[v] == 1).map(|v| v as u32).collect(),
            valid: h.is_hit_by(s),
        }
    }

    pub fn size(&self) -> usize {
        self.chosen.len()
    }

    pub fn to_state(&self, n: usize) -> State {
        let mut s = State::zeros(n);
        for &v in &self.chosen {
            s.set(v as usize, 1);
        }
        s
    }
}

/// Repeatedly take the vertex hitting the most unhit edges, lowest index on ties.
pub fn greedy_reference(h: &Hypergraph) -> HittingSetSolution {
    let inc = h.incidence();
    let mut hit = vec![false; h.num_edges()];
    let mut gain: Vec<usize> = inc.iter().map(Vec::len).collect();
    let mut remaining = h.num_edges();
    let mut chosen = Vec::new();
    while remaining > 0 {
        let (v, _) = gain
            .iter()
            .enumerate()
            .fold((0, 0), |best, (v, &g)| if g > best.1 { (v, g) } else { best });
        chosen.push(v as u32);
        for &r in &inc[v] {
            let r = r as usize;
            if !hit[r] {
                hit[r] = true;
                remaining -= 1;
                for &u in &h.edges[r] {
                    gain[u as usize] -= 1;
                }
            }
        }
    }
    chosen.sort_unstable();
    HittingSetSolution { chosen, valid: true }
}

/// Smallest hitting set by enumerating subsets in order of size.
pub fn brute_force_hitting_set(h: &Hypergraph) -> Result<HittingSetSolution> {
    let n = h.num_vertices;
    if n > MAX_EXACT_VARS {
        return Err(Error::Capacity { what: "vertices for brute force".into(), limit: MAX_EXACT_VARS });
    }
    let edge_masks: Vec<u32> = h.edges.iter().map(|e| e.iter().fold(0u32, |m, &v| m | 1 << v)).collect();
    let mut best: Option<u32> = None;
    for mask in 0u32..(1u32 << n) {
        if best.is_some_and(|b| b.count_ones() <= mask.count_ones()) {
            continue;
        }
        if edge_masks.iter().all(|&e| e & mask != 0) {
            best = Some(mask);
        }
    }
    let mask = best.expect("the full vertex set hits every non-empty edge");
    Ok(HittingSetSolution { chosen: (0..n as u32).filter(|v| mask >> v & 1 == 1).collect(), valid: true })
}

/// `|Z_found| / |Z_ref|`.
pub fn hs_quality(found: &HittingSetSolution, reference: &HittingSetSolution) -> Result<f64> {
    if !found.valid || !reference.valid {
        return Err(Error::Scoring("cannot score an invalid hitting set".into()));
    }
    match (found.size(), reference.size()) {
        (0, 0) => Ok(1.0),
        (_, 0) => Err(Error::Scoring("reference hitting set is empty".into())),
        (f, r) => Ok(f as f64 / r as f64),
    }
}

/// Drops chosen vertices that are not needed, then adds greedy picks for any
/// unhit edges. Turns a sampler state into a valid cover.
pub fn repair(h: &Hypergraph, s: &[u8]) -> HittingSetSolution {
    let inc = h.incidence();
    let mut cover = vec![0usize; h.num_edges()];
    for (r, e) in h.edges.iter().enumerate() {
        cover[r] = e.iter().filter(|&&v| s[v as usize] == 1).count();
    }
    let mut chosen: Vec<u8> = s.to_vec();
    let mut remaining: Vec<usize> = (0..h.num_edges()).filter(|&r| cover[r] == 0).collect();
    while !remaining.is_empty() {
        let mut gain = vec![0usize; h.num_vertices];
        for &r in &remaining {
            for &v in &h.edges[r] {
                gain[v as usize] += 1;
            }
        }
        let v = (0..h.num_vertices).fold(0, |b, v| if gain[v] > gain[b] { v } else { b });
        chosen[v] = 1;
        for &r in &inc[v] {
            cover[r as usize] += 1;
        }
        remaining.retain(|&r| cover[r] == 0);
    }
    for v in 0..h.num_vertices {
        if chosen[v] == 1 && inc[v].iter().all(|&r| cover[r as usize] > 1) {
            chosen[v] = 0;
            for &r in &inc[v] {
                cover[r as usize] -= 1;
            }
        }
    }
    HittingSetSolution::from_state(h, &chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap()
    }

    #[test]
    fn hand_expanded_energies() {
        let m = encode_hitting_set(&path3(), 13.0, 9.0).unwrap();
        assert_eq!(m.energy(&[0, 0, 0]).unwrap(), 26.0);
        assert_eq!(m.energy(&[0, 1, 0]).unwrap(), 9.0);
        assert_eq!(m.update_drive(&[0, 0, 0], 1).unwrap(), 17.0);
    }

    #[test]
    fn analytic_drive() {
        let h = path3();
        let inc = h.incidence();
        assert_eq!(hs_update_drive(&h, &inc, 13.0, 9.0, &[0, 1, 0], 1).unwrap(), 17.0);
        let lone = Hypergraph::new(2, vec![vec![0]]).unwrap();
        assert_eq!(hs_update_drive(&lone, &lone.incidence(), 13.0, 9.0, &[0, 0], 1).unwrap(), -9.0);
        assert_eq!(hs_update_drive(&h, &inc, 13.0, 9.0, &[1, 0, 1], 1).unwrap(), -9.0);
        assert!(hs_update_drive(&h, &inc, 13.0, 9.0, &[0, 0, 0], 3).is_err());
    }

    #[test]
    fn encoder_rejects_bad_weights() {
        assert!(encode_hitting_set(&path3(), 9.0, 9.0).is_err());
        assert!(encode_hitting_set(&path3(), 13.0, 0.0).is_err());
    }

    #[test]
    fn empty_edges_is_linear() {
        let h = Hypergraph::new(4, vec![]).unwrap();
        let m = encode_hitting_set(&h, 13.0, 9.0).unwrap();
        assert_eq!(m.max_order(), 1);
        assert_eq!(m.energy(&[1, 1, 0, 0]).unwrap(), 18.0);
        assert_eq!(greedy_reference(&h).size(), 0);
    }

    #[test]
    fn order_matches_dimension() {
        let h = Hypergraph::new(6, vec![vec![0, 1, 2, 3, 4], vec![1, 5]]).unwrap();
        assert_eq!(encode_hitting_set(&h, 13.0, 9.0).unwrap().max_order(), 5);
    }

    #[test]
    fn generator_contract() {
        let h = gen_hypergraph(3, 1, 3, 1).unwrap();
        assert_eq!(h.edges, vec![vec![0, 1, 2]]);
        let h = gen_hypergraph(50, 60, 5, 9).unwrap();
        assert!(h.edges.iter().all(|e| e.len() == 5 && e.iter().all(|&v| v < 50)));
        let distinct: HashSet<_> = h.edges.iter().collect();
        assert_eq!(distinct.len(), 60);
        assert_eq!(h, gen_hypergraph(50, 60, 5, 9).unwrap());
        assert!(gen_hypergraph(3, 1, 4, 0).is_err());
        assert!(gen_hypergraph(3, 2, 3, 0).is_err());
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_reference(&path3()).chosen, vec![1]);
        let h = Hypergraph::new(2, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(greedy_reference(&h).size(), 2);
    }

    #[test]
    fn quality() {
        let sol = |n: usize| HittingSetSolution { chosen: (0..n as u32).collect(), valid: true };
        assert_eq!(hs_quality(&sol(10), &sol(10)).unwrap(), 1.0);
        assert_eq!(hs_quality(&sol(12), &sol(10)).unwrap(), 1.2);
        assert_eq!(hs_quality(&sol(9), &sol(10)).unwrap(), 0.9);
        let bad = HittingSetSolution { chosen: vec![], valid: false };
        assert!(hs_quality(&bad, &sol(1)).is_err());
    }

    #[test]
    fn repair_makes_valid_and_trims() {
        let h = gen_hypergraph(20, 30, 4, 5).unwrap();
        let fixed = repair(&h, &[0; 20]);
        assert!(fixed.valid);
        let full = repair(&h, &[1; 20]);
        assert!(full.valid && full.size() < 20);
    }

    #[test]
    fn text_round_trip() {
        let h = gen_hypergraph(12, 7, 3, 2).unwrap();
        assert_eq!(Hypergraph::parse(&h.to_text()).unwrap(), h);
        assert!(Hypergraph::parse("3 2\n0 1\n").is_err());
        assert!(Hypergraph::parse("3 1\n0 5\n").is_err());
    }
}
