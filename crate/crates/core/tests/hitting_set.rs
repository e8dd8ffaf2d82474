mod common;

use proptest::prelude::*;

use vcpc::model::exact_minimum;
use vcpc::problems::hitting_set::{
    brute_force_hitting_set, encode_hitting_set, gen_hypergraph, greedy_reference, hs_quality, repair, HittingSetSolution,
    Hypergraph,
};

/// Ground states of the encoded energy are exactly the minimum hitting sets.
fn ground_states_are_minimum_covers(h: &Hypergraph) -> bool {
    let exact = brute_force_hitting_set(h).unwrap();
    let model = encode_hitting_set(h, 13.0, 9.0).unwrap();
    let ground = exact_minimum(&model).unwrap();
    (ground.energy - 9.0 * exact.size() as f64).abs() < 1e-9
        && ground.argmin.iter().all(|s| h.is_hit_by(s.as_slice()) && s.count_ones() == exact.size())
}

#[test]
fn ground_states_match_brute_force_up_to_twenty_vertices() {
    for seed in 0..40u64 {
        let n = 8 + (seed as usize % 13);
        let k = 2 + (seed as usize % 4);
        let h = gen_hypergraph(n, n, k, seed).unwrap();
        assert!(ground_states_are_minimum_covers(&h), "seed {seed}, n {n}, k {k}");
    }
}

#[test]
fn greedy_never_beats_the_exact_cover() {
    for seed in 0..30 {
        let h = gen_hypergraph(18, 18, 3, seed).unwrap();
        let q = hs_quality(&greedy_reference(&h), &brute_force_hitting_set(&h).unwrap()).unwrap();
        assert!(q >= 1.0);
    }
}

fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    (4usize..40, 1usize..5, any::<u64>()).prop_filter_map("edge count", |(n, k, seed)| {
        let k = k.min(n);
        gen_hypergraph(n, 1 + (seed % n as u64) as usize, k, seed).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn greedy_is_a_valid_cover(h in hypergraph()) {
        let g = greedy_reference(&h);
        prop_assert!(g.valid);
        prop_assert!(h.is_hit_by(g.to_state(h.num_vertices).as_slice()));
        prop_assert!(g.size() <= h.num_vertices.min(h.num_edges()));
    }

    #[test]
    fn repair_yields_a_valid_cover(h in hypergraph(), seed in any::<u64>()) {
        let s = common::random_bits(h.num_vertices, &mut common::rng(seed));
        let fixed = repair(&h, &s);
        prop_assert!(fixed.valid);
        prop_assert!(h.is_hit_by(fixed.to_state(h.num_vertices).as_slice()));
        if h.is_hit_by(&s) {
            let before = HittingSetSolution::from_state(&h, &s);
            prop_assert!(fixed.chosen.iter().all(|v| before.chosen.contains(v)));
        }
    }

    #[test]
    fn file_format_round_trips(h in hypergraph()) {
        prop_assert_eq!(Hypergraph::parse(&h.to_text()).unwrap(), h);
    }
}
