//! Erdős–Rényi spin glasses and their binary (QUBO) form.
//!
//! Ising energy: `E(σ) = −Σ_{i<j} J_ij σ_i σ_j − Σ_i h_i σ_i` with `σ ∈ {−1,+1}`.
//! The binary form uses `σ = 2s − 1`.

use std::fmt::Write as _;
use std::path::Path;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::colouring::plan_groups;
use crate::error::{Error, Result};
use crate::model::{ClampMask, EnergyModel, MAX_EXACT_VARS};
use crate::rng;
use crate::solvers::{run_pt, PtConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingInstance {
    pub num_spins: usize,
    /// `(i, j, J_ij)` with `i < j`, sorted, no repeated pairs.
    pub couplings: Vec<(u32, u32, f64)>,
    pub fields: Vec<f64>,
}

impl IsingInstance {
    /// Normalises pair order, merges repeats and drops zero couplings.
    pub fn new(num_spins: usize, couplings: impl IntoIterator<Item = (u32, u32, f64)>, fields: Vec<f64>) -> Result<Self> {
        if fields.len() != num_spins {
            return Err(Error::Dimension { expected: num_spins, actual: fields.len() });
        }
        let mut cs: Vec<(u32, u32, f64)> = Vec::new();
        for (i, j, w) in couplings {
            let (i, j) = if i < j { (i, j) } else { (j, i) };
            if i == j {
                return Err(Error::Domain(format!("self-coupling on spin {i}")));
            }
            if j as usize >= num_spins {
                return Err(Error::Index { index: j as usize, len: num_spins });
            }
            cs.push((i, j, w));
        }
        cs.sort_by_key(|&(i, j, _)| (i, j));
        let mut merged: Vec<(u32, u32, f64)> = Vec::with_capacity(cs.len());
        for c in cs {
            match merged.last_mut() {
                Some(m) if (m.0, m.1) == (c.0, c.1) => m.2 += c.2,
                _ => merged.push(c),
            }
        }
        merged.retain(|c| c.2 != 0.0);
        Ok(IsingInstance { num_spins, couplings: merged, fields })
    }

    pub fn num_edges(&self) -> usize {
        self.couplings.len()
    }

    /// `2|E| / (N(N−1))`.
    pub fn density(&self) -> f64 {
        let n = self.num_spins as f64;
        if self.num_spins < 2 {
            0.0
        } else {
            2.0 * self.couplings.len() as f64 / (n * (n - 1.0))
        }
    }

    /// Neighbour lists `(j, J_ij)` for every spin.
    pub fn adjacency(&self) -> Vec<Vec<(u32, f64)>> {
        let mut adj = vec![Vec::new(); self.num_spins];
        for &(i, j, w) in &self.couplings {
            adj[i as usize].push((j, w));
            adj[j as usize].push((i, w));
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.num_spins];
        for &(i, j, _) in &self.couplings {
            d[i as usize] += 1;
            d[j as usize] += 1;
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn energy(&self, sigma: &[i8]) -> Result<f64> {
        if sigma.len() != self.num_spins {
            return Err(Error::Dimension { expected: self.num_spins, actual: sigma.len() });
        }
        let pair: f64 = self.couplings.iter().map(|&(i, j, w)| w * (sigma[i as usize] * sigma[j as usize]) as f64).sum();
        let field: f64 = self.fields.iter().zip(sigma).map(|(h, &s)| h * s as f64).sum();
        Ok(-pair - field)
    }

    /// Ising energy of a binary state via `σ = 2s − 1`.
    pub fn energy_binary(&self, s: &[u8]) -> Result<f64> {
        self.energy(&to_spins(s))
    }

    /// `N` header, `i j J` lines, then `field i h` lines for non-zero fields.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.num_spins);
        for &(i, j, w) in &self.couplings {
            let _ = writeln!(out, "{i} {j} {w}");
        }
        for (i, &h) in self.fields.iter().enumerate() {
            if h != 0.0 {
                let _ = writeln!(out, "field {i} {h}");
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "missing spin count"))?;
        let n: usize = header.parse().map_err(|_| Error::parse(ln, format!("bad spin count `{header}`")))?;
        let mut couplings = Vec::new();
        let mut fields = vec![0.0; n];
        for (ln, l) in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            let idx = |t: &str| t.parse::<u32>().map_err(|_| Error::parse(ln, format!("bad index `{t}`")));
            let val = |t: &str| t.parse::<f64>().map_err(|_| Error::parse(ln, format!("bad number `{t}`")));
            match toks[..] {
                ["field", i, h] => {
                    let i = idx(i)? as usize;
                    if i >= n {
                        return Err(Error::Index { index: i, len: n });
                    }
                    fields[i] += val(h)?;
                }
                [i, j, w] => couplings.push((idx(i)?, idx(j)?, val(w)?)),
                _ => return Err(Error::parse(ln, "expected `i j J` or `field i h`")),
            }
        }
        IsingInstance::new(n, couplings, fields)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }
}

pub fn to_spins(s: &[u8]) -> Vec<i8> {
    s.iter().map(|&b| 2 * b as i8 - 1).collect()
}

pub fn to_bits(sigma: &[i8]) -> Vec<u8> {
    sigma.iter().map(|&x| u8::from(x > 0)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErSpec {
    pub n: usize,
    pub p: f64,
}

/// Each pair joins with probability `p`; joined pairs get `J = ±1` evenly.
pub fn gen_er(spec: ErSpec, seed: u64) -> Result<IsingInstance> {
    if !(0.0..=1.0).contains(&spec.p) {
        return Err(Error::Domain(format!("edge probability {} outside [0, 1]", spec.p)));
    }
    let mut r = rng::stream(seed, &[rng::tag::INSTANCE]);
    let mut couplings = Vec::new();
    for i in 0..spec.n as u32 {
        for j in i + 1..spec.n as u32 {
            if r.random::<f64>() < spec.p {
                couplings.push((i, j, if r.random::<bool>() { 1.0 } else { -1.0 }));
            }
        }
    }
    Ok(IsingInstance { num_spins: spec.n, couplings, fields: vec![0.0; spec.n] })
}

/// `Q_ij = −4J_ij`, `b_i = 2Σ_j J_ij − 2h_i`, `C = −Σ J_ij + Σ h_i`, so binary
/// and Ising energies agree state by state.
pub fn ising_to_qubo(inst: &IsingInstance) -> Result<EnergyModel> {
    let mut b = EnergyModel::builder(inst.num_spins);
    let mut linear = vec![0.0; inst.num_spins];
    let mut constant = 0.0;
    for &(i, j, w) in &inst.couplings {
        b.add_term(-4.0 * w, [i, j])?;
        linear[i as usize] += 2.0 * w;
        linear[j as usize] += 2.0 * w;
        constant -= w;
    }
    for (i, &h) in inst.fields.iter().enumerate() {
        linear[i] -= 2.0 * h;
        constant += h;
    }
    for (i, &c) in linear.iter().enumerate() {
        b.add_term(c, [i])?;
    }
    b.add_constant(constant);
    Ok(b.build())
}

/// Inverse of [`ising_to_qubo`]: `J_ij = −Q_ij/4`, `h_i = −b_i/2 − Σ_j Q_ij/4`.
/// Returns the instance and the constant that makes energies agree.
pub fn qubo_to_ising(model: &EnergyModel) -> Result<(IsingInstance, f64)> {
    if model.max_order() > 2 {
        return Err(Error::Domain(format!("model has order {}, expected at most 2", model.max_order())));
    }
    let n = model.num_vars();
    let mut fields = vec![0.0; n];
    let mut couplings = Vec::new();
    let mut constant = model.constant();
    for t in model.terms() {
        match *t.vars {
            [i] => {
                fields[i as usize] -= t.coeff / 2.0;
                constant += t.coeff / 2.0;
            }
            [i, j] => {
                couplings.push((i, j, -t.coeff / 4.0));
                fields[i as usize] -= t.coeff / 4.0;
                fields[j as usize] -= t.coeff / 4.0;
                constant += t.coeff / 4.0;
            }
            _ => unreachable!("order checked above"),
        }
    }
    Ok((IsingInstance::new(n, couplings, fields)?, constant))
}

/// `−(Σ_j Q_kj s_j + b_k)`, reading `Q` and `b` off the terms incident to `k`.
pub fn sg_update_drive(model: &EnergyModel, s: &[u8], k: usize) -> Result<f64> {
    if k >= model.num_vars() {
        return Err(Error::Index { index: k, len: model.num_vars() });
    }
    if s.len() != model.num_vars() {
        return Err(Error::Dimension { expected: model.num_vars(), actual: s.len() });
    }
    let mut field = 0.0;
    for &t in model.incident_terms(k) {
        let term = model.term(t as usize);
        match term.vars {
            [_] => field += term.coeff,
            [a, b] => {
                let other = if *a as usize == k { *b } else { *a };
                field += term.coeff * s[other as usize] as f64;
            }
            _ => return Err(Error::Domain("spin-glass drive needs a quadratic model".into())),
        }
    }
    Ok(-field)
}

/// Exact Ising ground state by a Gray-code walk over spin flips.
pub fn brute_force_ground(inst: &IsingInstance) -> Result<(f64, Vec<i8>)> {
    let n = inst.num_spins;
    if n > MAX_EXACT_VARS {
        return Err(Error::Capacity { what: "spins for brute force".into(), limit: MAX_EXACT_VARS });
    }
    let adj = inst.adjacency();
    let mut sigma = vec![-1i8; n];
    // local[i] = Σ_j J_ij σ_j + h_i; flipping i changes E by 2σ_i·local[i].
    let mut local: Vec<f64> = (0..n).map(|i| inst.fields[i] - adj[i].iter().map(|&(_, w)| w).sum::<f64>()).collect();
    let mut energy = inst.energy(&sigma)?;
    let mut best = (energy, sigma.clone());
    for g in 1u64..(1u64 << n) {
        let i = g.trailing_zeros() as usize;
        energy += 2.0 * sigma[i] as f64 * local[i];
        sigma[i] = -sigma[i];
        for &(j, w) in &adj[i] {
            local[j as usize] += 2.0 * w * sigma[i] as f64;
        }
        if energy < best.0 {
            best = (energy, sigma.clone());
        }
    }
    let exact = inst.energy(&best.1)?;
    Ok((exact, best.1))
}

/// Long-PT reference settings by size: β 1–5 with 10 replicas up to 500 spins,
/// β 0.3–10 with 20 replicas beyond; 3000 iterations, swaps every 10, 20 repeats.
pub fn pt_baseline_config(n: usize, seed: u64) -> PtConfig {
    if n <= 500 {
        PtConfig::new(1.0, 5.0, 10, 3000, 10, 20, seed)
    } else {
        PtConfig::new(0.3, 10.0, 20, 3000, 10, 20, seed)
    }
}

/// Best Ising energy found by PT on the binary form.
pub fn pt_baseline(inst: &IsingInstance, cfg: &PtConfig) -> Result<f64> {
    let model = ising_to_qubo(inst)?;
    let clamp = ClampMask::all_free(inst.num_spins);
    let plan = plan_groups(&model, &clamp)?;
    Ok(run_pt(&model, &clamp, &plan, cfg)?.best_energy)
}

/// `E_found / E_ref`; only defined for a strictly negative reference.
pub fn sg_quality(found: f64, reference: f64) -> Result<f64> {
    if reference >= 0.0 {
        return Err(Error::Scoring(format!("reference energy {reference} is not negative")));
    }
    Ok(found / reference)
}
