#![allow(dead_code)]

use rand::Rng as _;

use vcpc::colouring::{build_conflict_graph, plan_groups, GroupPlan};
use vcpc::model::{exact_boltzmann, exact_minimum, MAX_EXACT_VARS};
use vcpc::problems::hitting_set::{encode_hitting_set, gen_hypergraph, hs_update_drive};
use vcpc::problems::spinglass::{ising_to_qubo, sg_update_drive, to_spins, IsingInstance};
use vcpc::problems::tsp::{build_mask, encode_tsp, tsp_update_drive, var, EdgeWeight, MaskMatrix, TspInstance};
use vcpc::rng::{self, Rng};
use vcpc::solvers::{GibbsChain, GroupSelection, ReplicaExchange};
use vcpc::transforms::{quadratise, sparsify};
use vcpc::{ClampMask, EnergyModel, State};

pub fn rng(seed: u64) -> Rng {
    rng::stream(seed, &[0xACCE])
}

pub fn random_bits(n: usize, r: &mut Rng) -> Vec<u8> {
    (0..n).map(|_| r.random_range(0..2u8)).collect()
}

/// Linear and pairwise coefficients uniform in `[-1, 1]`, every pair present.
pub fn random_qubo(n: usize, r: &mut Rng) -> EnergyModel {
    let mut b = EnergyModel::builder(n);
    for i in 0..n {
        b.add_term(r.random_range(-1.0..1.0), [i]).unwrap();
        for j in i + 1..n {
            b.add_term(r.random_range(-1.0..1.0), [i, j]).unwrap();
        }
    }
    b.build()
}

/// `terms` random monomials of order 1..=max_order with integer coefficients.
pub fn random_hubo(n: usize, max_order: usize, terms: usize, r: &mut Rng) -> EnergyModel {
    let mut b = EnergyModel::builder(n);
    for _ in 0..terms {
        let order = r.random_range(1..=max_order.min(n));
        let mut vars: Vec<usize> = Vec::with_capacity(order);
        while vars.len() < order {
            let v = r.random_range(0..n);
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let c = r.random_range(-5i32..=5) as f64;
        b.add_term(c, vars).unwrap();
    }
    b.add_constant(r.random_range(-3i32..=3) as f64);
    b.build()
}

/// Ising instance with integer couplings and fields.
pub fn random_ising(n: usize, p: f64, r: &mut Rng) -> IsingInstance {
    let mut couplings = Vec::new();
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            if r.random::<f64>() < p {
                let w = *[-2.0, -1.0, 1.0, 2.0].get(r.random_range(0..4)).unwrap();
                couplings.push((i, j, w));
            }
        }
    }
    let fields = (0..n).map(|_| r.random_range(-2i32..=2) as f64).collect();
    IsingInstance::new(n, couplings, fields).unwrap()
}

pub fn random_cities(n: usize, r: &mut Rng) -> TspInstance {
    let coords = (0..n).map(|_| (r.random_range(0.0..100.0), r.random_range(0.0..100.0))).collect();
    TspInstance::from_coords("random", coords, EdgeWeight::Euc2d).unwrap()
}

pub fn drive_by_difference(model: &EnergyModel, s: &[u8], k: usize) -> f64 {
    let mut t = s.to_vec();
    t[k] = 0;
    let e0 = model.energy(&t).unwrap();
    t[k] = 1;
    e0 - model.energy(&t).unwrap()
}

pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

fn index_of(s: &State) -> usize {
    s.as_slice().iter().enumerate().map(|(v, &b)| (b as usize) << v).sum()
}

/// Systematic-scan single-site chain at `beta`; one sample per sweep after a
/// burn-in of 1000 sweeps.
pub fn gibbs_tv(model: &EnergyModel, beta: f64, samples: usize, seed: u64) -> f64 {
    let n = model.num_vars();
    let clamp = ClampMask::all_free(n);
    let mut r = rng::stream(seed, &[1]);
    let mut chain = GibbsChain::random(model, &clamp, &mut r);
    let mut counts = vec![0u64; 1 << n];
    for sweep in 0..samples + 1000 {
        for k in 0..n as u32 {
            chain.update_group(&[k], beta, &mut r);
        }
        if sweep >= 1000 {
            counts[index_of(chain.state())] += 1;
        }
    }
    let empirical: Vec<f64> = counts.iter().map(|&c| c as f64 / samples as f64).collect();
    total_variation(&empirical, &exact_boltzmann(model, beta).unwrap())
}

/// Replicas all at `beta`; after every round-robin sweep each replica
/// contributes one sample and a swap sweep runs. Returns the pooled TV
/// distance and the smallest swap acceptance.
pub fn equal_beta_pt_tv(model: &EnergyModel, beta: f64, replicas: usize, samples: usize, seed: u64) -> (f64, f64) {
    let n = model.num_vars();
    let clamp = ClampMask::all_free(n);
    let plan = GroupPlan::singletons(&clamp);
    let mut pt = ReplicaExchange::new(model, &clamp, vec![beta; replicas], seed);
    let rounds = samples / replicas;
    let mut counts = vec![0u64; 1 << n];
    let mut it = 0u64;
    for round in 0..rounds + 1000 {
        for _ in 0..n {
            pt.iterate(&plan, GroupSelection::RoundRobin, it);
            it += 1;
        }
        pt.swap_sweep();
        if round >= 1000 {
            for c in pt.chains() {
                counts[index_of(c.state())] += 1;
            }
        }
    }
    let total = (rounds * replicas) as f64;
    let empirical: Vec<f64> = counts.iter().map(|&c| c as f64 / total).collect();
    let min_acc = pt.swap_acceptance().into_iter().fold(1.0, f64::min);
    (total_variation(&empirical, &exact_boltzmann(model, beta).unwrap()), min_acc)
}

/// Worst disagreement between closed-form hitting-set drives and energy
/// differences of the encoded model over `probes` random probes.
pub fn hs_drive_error(probes: usize, seed: u64) -> f64 {
    let mut r = rng(seed);
    let mut worst = 0.0f64;
    for p in 0..probes {
        let n = r.random_range(5..=16);
        let k = r.random_range(2..=4);
        let m = r.random_range(1..=n);
        let h = gen_hypergraph(n, m, k, rng::derive_seed(seed, &[p as u64])).unwrap();
        let b = r.random_range(0.1..10.0);
        let a = b + r.random_range(0.5..20.0);
        let model = encode_hitting_set(&h, a, b).unwrap();
        let s = random_bits(n, &mut r);
        let v = r.random_range(0..n);
        let closed = hs_update_drive(&h, &h.incidence(), a, b, &s, v).unwrap();
        worst = worst.max((closed - drive_by_difference(&model, &s, v)).abs());
    }
    worst
}

/// Same for TSP cells, half the probes under a random cluster mask.
pub fn tsp_drive_error(probes: usize, seed: u64) -> f64 {
    let mut r = rng(seed);
    let mut worst = 0.0f64;
    for p in 0..probes {
        let n = r.random_range(2..=8);
        let inst = random_cities(n, &mut r);
        let a = 2.0 * inst.max_dist() + 1.0;
        let b = r.random_range(0.5..2.0);
        let mask = if p % 2 == 1 && n >= 3 { Some(random_mask(n, &mut r)) } else { None };
        let (model, clamp) = encode_tsp(&inst, a, b, mask.as_ref()).unwrap();
        let mut s = random_bits(n * n, &mut r);
        for (v, bit) in s.iter_mut().enumerate() {
            if !clamp.is_free(v) {
                *bit = 0;
            }
        }
        let free: Vec<usize> = clamp.free_vars().collect();
        let v = free[r.random_range(0..free.len())];
        let (i, k) = (v / n, v % n);
        assert_eq!(var(n, i, k), v);
        let closed = tsp_update_drive(&inst, a, b, &s, &clamp, i, k).unwrap();
        worst = worst.max((closed - drive_by_difference(&model, &s, v)).abs());
    }
    worst
}

/// Random partition of `n` entities into 2..=3 clusters laid out by a random
/// parent tour.
pub fn random_mask(n: usize, r: &mut Rng) -> MaskMatrix {
    let clusters = r.random_range(2..=3.min(n));
    let mut assignment: Vec<usize> = (0..n).map(|i| i % clusters).collect();
    for i in (1..n).rev() {
        assignment.swap(i, r.random_range(0..=i));
    }
    let mut parent: Vec<usize> = (0..clusters).collect();
    for i in (1..clusters).rev() {
        parent.swap(i, r.random_range(0..=i));
    }
    build_mask(&parent, &assignment, n).unwrap()
}

/// Spin-glass drives against Ising energy differences under `σ = 2s − 1`.
pub fn sg_drive_error(probes: usize, seed: u64) -> f64 {
    let mut r = rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..probes {
        let n = r.random_range(2..=16);
        let inst = random_ising(n, r.random_range(0.2..1.0), &mut r);
        let model = ising_to_qubo(&inst).unwrap();
        let mut s = random_bits(n, &mut r);
        let k = r.random_range(0..n);
        let closed = sg_update_drive(&model, &s, k).unwrap();
        s[k] = 0;
        let e0 = inst.energy(&to_spins(&s)).unwrap();
        s[k] = 1;
        let e1 = inst.energy(&to_spins(&s)).unwrap();
        worst = worst.max((closed - (e0 - e1)).abs());
    }
    worst
}

/// Pairs of variables sharing a group while sharing a term.
pub fn conflicting_pairs(model: &EnergyModel, clamp: &ClampMask, plan: &GroupPlan) -> usize {
    let graph = build_conflict_graph(model, clamp).unwrap();
    plan.groups()
        .iter()
        .map(|g| {
            let mut bad = 0;
            for (x, &u) in g.iter().enumerate() {
                for &v in &g[x + 1..] {
                    if graph.contains_edge(u as usize, v as usize) {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .sum()
}

/// Ten cities in four tight clusters of sizes 4, 3, 2 and 1.
pub fn clustered_ten() -> TspInstance {
    let centres = [(0.0, 0.0), (100.0, 0.0), (100.0, 100.0), (0.0, 100.0)];
    let sizes = [4usize, 3, 2, 1];
    let mut coords = Vec::new();
    for (c, &(x, y)) in centres.iter().enumerate() {
        for j in 0..sizes[c] {
            coords.push((x + 3.0 * j as f64, y + 2.0 * (j % 2) as f64));
        }
    }
    TspInstance::from_coords("clustered10", coords, EdgeWeight::Euc2d).unwrap()
}

/// Group counts of the ten-city instance without and with the cluster mask
/// induced by visiting the clusters in order.
pub fn clustered_ten_groups() -> (usize, usize, usize) {
    let inst = clustered_ten();
    let a = 2.0 * inst.max_dist();
    let (full, clamp) = encode_tsp(&inst, a, 1.0, None).unwrap();
    let unmasked = plan_groups(&full, &clamp).unwrap();
    let assignment = vec![0, 0, 0, 0, 1, 1, 1, 2, 2, 3];
    let mask = build_mask(&[0, 1, 2, 3], &assignment, 10).unwrap();
    let (model, clamp) = encode_tsp(&inst, a, 1.0, Some(&mask)).unwrap();
    let model = model.condition(&clamp).unwrap();
    let masked = plan_groups(&model, &clamp).unwrap();
    (unmasked.num_groups(), masked.num_groups(), clamp.num_free())
}

/// Random HUBOs whose quadratised minimum, projected, differs from the
/// original minimum.
pub fn quadratisation_failures(count: usize, seed: u64) -> usize {
    let mut r = rng(seed);
    let mut failures = 0;
    for _ in 0..count {
        // Redraw until the reduced model is small enough to enumerate.
        let (hubo, quad) = loop {
            let n = r.random_range(3..=12);
            let order = r.random_range(3..=4.min(n));
            let terms = r.random_range(n..=3 * n);
            let hubo = random_hubo(n, order, terms, &mut r);
            let quad = quadratise(&hubo, None).unwrap();
            if quad.model.num_vars() <= MAX_EXACT_VARS {
                break (hubo, quad);
            }
        };
        let orig = exact_minimum(&hubo).unwrap();
        let reduced = exact_minimum(&quad.model).unwrap();
        let projected = quad.project(reduced.argmin[0].as_slice());
        let e_proj = hubo.energy(projected.as_slice()).unwrap();
        if quad.model.max_order() > 2
            || (reduced.energy - orig.energy).abs() > 1e-9
            || (e_proj - orig.energy).abs() > 1e-9
        {
            failures += 1;
        }
    }
    failures
}

/// Instances where some state has differing Ising and QUBO energies.
pub fn equivalence_failures(count: usize, seed: u64) -> usize {
    let mut r = rng(seed);
    let mut failures = 0;
    for _ in 0..count {
        let n = r.random_range(1..=12);
        let inst = random_ising(n, r.random_range(0.0..1.0), &mut r);
        let model = ising_to_qubo(&inst).unwrap();
        let mismatch = (0..1u64 << n).any(|x| {
            let s: Vec<u8> = (0..n).map(|v| ((x >> v) & 1) as u8).collect();
            inst.energy(&to_spins(&s)).unwrap() != model.energy(&s).unwrap()
        });
        failures += mismatch as usize;
    }
    failures
}

/// Exhaustive Ising minimum and one minimiser.
pub fn ising_ground(inst: &IsingInstance) -> (f64, Vec<Vec<i8>>) {
    let n = inst.num_spins;
    let mut best = f64::INFINITY;
    let mut argmin = Vec::new();
    for x in 0..1u64 << n {
        let sigma: Vec<i8> = (0..n).map(|v| if (x >> v) & 1 == 1 { 1 } else { -1 }).collect();
        let e = inst.energy(&sigma).unwrap();
        if e < best - 1e-9 {
            best = e;
            argmin.clear();
        }
        if (e - best).abs() <= 1e-9 {
            argmin.push(sigma);
        }
    }
    (best, argmin)
}

/// Sparsified graphs checked for the degree bound and, where small enough to
/// enumerate, for logical ground-state preservation with intact chains.
/// Returns `(degree violations, preservation failures, preservation checks)`.
pub fn sparsify_checks(count: usize, seed: u64) -> (usize, usize, usize) {
    let mut r = rng(seed);
    let (mut degree_bad, mut ground_bad, mut checked) = (0, 0, 0);
    for _ in 0..count {
        let n = r.random_range(5..=10);
        let inst = random_ising(n, r.random_range(0.5..1.0), &mut r);
        let d = inst.max_degree();
        if d < 4 {
            continue;
        }
        let k = r.random_range(3..d);
        let sp = sparsify(&inst, k, None).unwrap();
        if sp.physical.degrees().iter().any(|&deg| deg > k) {
            degree_bad += 1;
        }
        if sp.num_physical() > 22 {
            continue;
        }
        checked += 1;
        let (e_logical, logical_min) = ising_ground(&inst);
        let (_, physical_min) = ising_ground(&sp.physical);
        let ok = physical_min.iter().all(|sigma| {
            let (logical, intact) = sp.project(sigma);
            intact
                && (inst.energy(&logical).unwrap() - e_logical).abs() <= 1e-9
                && logical_min.contains(&logical)
        });
        ground_bad += (!ok) as usize;
    }
    (degree_bad, ground_bad, checked)
}
