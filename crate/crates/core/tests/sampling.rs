mod common;

use vcpc::colouring::plan_groups;
use vcpc::model::exact_minimum;
use vcpc::solvers::{run_pt, run_sa, PtConfig, SaConfig};
use vcpc::ClampMask;

#[test]
fn single_site_chain_matches_boltzmann() {
    for m in 0..5 {
        let model = common::random_qubo(8, &mut common::rng(100 + m));
        let tv = common::gibbs_tv(&model, 1.0, 1_000_000, m);
        assert!(tv < 0.02, "model {m}: TV {tv}");
    }
}

#[test]
fn equal_temperature_replicas_pool_to_boltzmann() {
    let model = common::random_qubo(6, &mut common::rng(200));
    let (tv, min_acc) = common::equal_beta_pt_tv(&model, 1.0, 4, 1_000_000, 7);
    assert_eq!(min_acc, 1.0);
    assert!(tv < 0.03, "TV {tv}");
}

#[test]
fn cold_annealing_finds_the_minimum() {
    let model = common::random_hubo(10, 3, 30, &mut common::rng(300));
    let clamp = ClampMask::all_free(10);
    let plan = plan_groups(&model, &clamp).unwrap();
    let exact = exact_minimum(&model).unwrap().energy;
    let hits = (0..100)
        .filter(|&seed| {
            let cfg = SaConfig::new(0.1, 50.0, 100, 20, 1, seed);
            (run_sa(&model, &clamp, &plan, &cfg).unwrap().best_energy - exact).abs() < 1e-9
        })
        .count();
    assert!(hits >= 95, "{hits}/100");
}

#[test]
fn trajectories_never_increase() {
    let model = common::random_hubo(12, 4, 40, &mut common::rng(400));
    let clamp = ClampMask::all_free(12);
    let plan = plan_groups(&model, &clamp).unwrap();
    let sa = run_sa(&model, &clamp, &plan, &SaConfig::new(0.01, 2.0, 50, 4, 3, 1)).unwrap();
    let pt = run_pt(&model, &clamp, &plan, &PtConfig::new(0.1, 3.0, 4, 300, 25, 2, 1)).unwrap();
    for r in [&sa, &pt] {
        assert!(r.trajectory.windows(2).all(|w| w[1].best_energy <= w[0].best_energy && w[1].iteration >= w[0].iteration));
        assert!((r.trajectory.last().unwrap().best_energy - r.best_energy).abs() < 1e-9);
        for rep in &r.repeats {
            assert!(rep.trajectory.windows(2).all(|w| w[1].best_energy <= w[0].best_energy));
        }
    }
}

#[test]
fn repeats_are_reproducible() {
    let model = common::random_hubo(12, 3, 40, &mut common::rng(500));
    let clamp = ClampMask::all_free(12);
    let plan = plan_groups(&model, &clamp).unwrap();
    let cfg = PtConfig::new(0.1, 3.0, 5, 200, 10, 3, 9);
    assert_eq!(run_pt(&model, &clamp, &plan, &cfg).unwrap(), run_pt(&model, &clamp, &plan, &cfg).unwrap());
}
