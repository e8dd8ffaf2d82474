mod common;

use proptest::prelude::*;

use vcpc::problems::spinglass::{gen_er, ErSpec};
use vcpc::transforms::{copies_needed, growth_metrics, quadratise, rosenberg_penalty, sparsify, sparsify_sweep};

#[test]
fn quadratised_minimum_equals_original() {
    assert_eq!(common::quadratisation_failures(50, 1), 0);
}

#[test]
fn penalty_vanishes_only_on_consistent_products() {
    for a in 0..2u8 {
        for b in 0..2u8 {
            for y in 0..2u8 {
                let p = rosenberg_penalty(a, b, y);
                if y == a & b {
                    assert_eq!(p, 0.0);
                } else {
                    assert!(p >= 1.0);
                }
            }
        }
    }
}

#[test]
fn sparsified_graphs_respect_budget_and_ground_states() {
    let (degree_bad, ground_bad, checked) = common::sparsify_checks(200, 2);
    assert_eq!(degree_bad, 0);
    assert!(checked >= 30, "{checked}");
    assert_eq!(ground_bad, 0, "{ground_bad}/{checked}");
}

#[test]
fn dense_graph_at_budget_nine_grows_past_a_thousand_nodes() {
    let g = gen_er(ErSpec { n: 100, p: 1.0 }, 0).unwrap();
    let sp = sparsify(&g, 9, None).unwrap();
    assert_eq!(sp.num_physical(), 100 * copies_needed(99, 9));
    assert!(sp.num_physical() > 1000);
    assert!(sp.physical.degrees().iter().all(|&d| d <= 9));
}

#[test]
fn sweep_starts_at_the_identity_and_grows() {
    let g = gen_er(ErSpec { n: 40, p: 0.5 }, 3).unwrap();
    let rows = sparsify_sweep(&g, &[]).unwrap();
    assert_eq!((rows[0].r_n, rows[0].r_s), (1.0, 1.0));
    assert!(rows.windows(2).all(|w| w[1].k < w[0].k && w[1].r_n >= w[0].r_n && w[1].r_s >= w[0].r_s));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn quadratised_energy_agrees_on_consistent_states(n in 2usize..=12, seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let hubo = common::random_hubo(n, 5, 2 * n, &mut r);
        let quad = quadratise(&hubo, None).unwrap();
        prop_assert!(quad.model.max_order() <= 2);
        for x in 0..1u64 << n {
            let s: Vec<u8> = (0..n).map(|v| ((x >> v) & 1) as u8).collect();
            let full = quad.extend_state(&s).unwrap();
            prop_assert!((quad.model.energy(full.as_slice()).unwrap() - hubo.energy(&s).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn lifted_states_keep_their_energy(n in 4usize..30, k in 3usize..8, seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let g = common::random_ising(n, 0.6, &mut r);
        let sp = sparsify(&g, k, None).unwrap();
        prop_assert!(sp.physical.degrees().iter().all(|&d| d <= k));
        let logical: Vec<i8> = common::random_bits(n, &mut r).iter().map(|&b| 2 * b as i8 - 1).collect();
        let lifted = sp.lift(&logical);
        let (back, intact) = sp.project(&lifted);
        prop_assert!(intact);
        prop_assert_eq!(&back, &logical);
        let chain_links: usize = sp.chains.iter().map(|c| c.len() - 1).sum();
        let e = sp.physical.energy(&lifted).unwrap() + sp.lambda * chain_links as f64;
        prop_assert!((e - g.energy(&logical).unwrap()).abs() < 1e-9);
        let m = growth_metrics(&g, &sp.physical);
        prop_assert!(m.r_n >= 1.0);
    }
}
