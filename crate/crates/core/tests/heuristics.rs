mod common;

use std::time::Duration;

use common::{optimum, solvable};
use osp_core::io::{generate_instance, GeneratorConfig};
use osp_core::{
    check_feasibility, construct, objective_lb, relative_gap, run_annealing, AnnealParams,
    ObjectiveWeights, StopReason,
};

fn params(seed: u64, secs: u64) -> AnnealParams {
    AnnealParams {
        rng_seed: seed,
        time_limit: Duration::from_secs(secs),
        ..AnnealParams::default()
    }
}

#[test]
fn annealing_finds_tiny_optima() {
    let mut hits = 0;
    let mut runs = 0;
    for inst in solvable(8, 5..=9) {
        let w = ObjectiveWeights::for_instance(&inst);
        let lb = objective_lb(&inst, &w).unwrap();
        let best = optimum(&inst, &w, true).unwrap().cost.scaled(&w);
        for seed in 0..3 {
            let out = run_annealing(&inst, &params(seed, 30), &w, Some(&lb)).unwrap();
            assert!(check_feasibility(&inst, &out.solution).is_empty());
            assert!(out.cost.scaled(&w) >= best);
            hits += (out.cost.scaled(&w) == best) as usize;
            runs += 1;
        }
    }
    assert!(hits * 10 >= runs * 8, "{hits}/{runs}");
}

#[test]
fn heuristics_stay_above_the_bound_at_every_size() {
    for (n, k, a) in [(20, 2, 2), (60, 3, 3), (150, 4, 4), (500, 5, 5)] {
        for seed in 0..2 {
            let inst = generate_instance(&GeneratorConfig::new(n, k, a, seed)).unwrap();
            let w = ObjectiveWeights::for_instance(&inst);
            let lb = objective_lb(&inst, &w).unwrap();
            let (sol, cost) = construct(&inst, &w).unwrap();
            assert!(check_feasibility(&inst, &sol).is_empty());
            assert!(cost.scaled(&w) >= lb.scaled(&w));
            assert!(cost.proc_time >= lb.proc_lb && cost.tardy >= lb.tardy_lb);
            assert!(cost.setup_cost >= lb.setup_lb);
            assert!(sol.batch_count() as u64 >= lb.batches_lb);

            let out = run_annealing(&inst, &params(seed, 1), &w, Some(&lb)).unwrap();
            assert!(check_feasibility(&inst, &out.solution).is_empty());
            assert!(out.cost.scaled(&w) >= lb.scaled(&w));
            assert!(out.cost.scaled(&w) <= cost.scaled(&w));
        }
    }
}

#[test]
fn gap_stop_only_fires_within_the_gap() {
    for inst in solvable(10, 4..=9) {
        let w = ObjectiveWeights::for_instance(&inst);
        let lb = objective_lb(&inst, &w).unwrap();
        for limit in [1.0, 25.0] {
            let p = AnnealParams {
                lb_gap_stop: Some(limit),
                ..params(1, 30)
            };
            let out = run_annealing(&inst, &p, &w, Some(&lb)).unwrap();
            let gap = relative_gap(out.cost.objective, lb.objective_lb).unwrap();
            if out.stop_reason == StopReason::Gap {
                assert!(gap <= limit + 1e-9, "{gap} > {limit}");
            } else {
                assert!(gap > limit);
            }
        }
    }
}

#[test]
fn seeded_runs_repeat() {
    let inst = generate_instance(&GeneratorConfig::new(40, 3, 3, 9)).unwrap();
    let w = ObjectiveWeights::for_instance(&inst);
    let p = AnnealParams {
        final_temp: 0.5,
        ..params(4, 60)
    };
    let a = run_annealing(&inst, &p, &w, None).unwrap();
    let b = run_annealing(&inst, &p, &w, None).unwrap();
    assert_eq!(a.stop_reason, StopReason::FinalTemperature);
    assert_eq!(a.solution, b.solution);
    assert_eq!((a.iterations, a.accepted), (b.iterations, b.accepted));
}
