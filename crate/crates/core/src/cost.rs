use crate::error::{Error, Result};
use crate::feasibility::check_feasibility;
use crate::model::{CostBreakdown, Instance, ObjectiveWeights, Solution};

/// Objective components of a feasible solution.
pub fn evaluate(
    instance: &Instance,
    solution: &Solution,
    weights: &ObjectiveWeights,
) -> Result<CostBreakdown> {
    let violations = check_feasibility(instance, solution);
    if !violations.is_empty() {
        return Err(Error::InfeasibleSolution(violations));
    }
    Ok(evaluate_unchecked(instance, solution, weights))
}

/// Same as [`evaluate`] without the feasibility check. Jobs missing from the
/// solution keep completion time 0 and are not counted as tardy.
pub fn evaluate_unchecked(
    instance: &Instance,
    solution: &Solution,
    weights: &ObjectiveWeights,
) -> CostBreakdown {
    let mut completion = vec![0; instance.jobs.len()];
    let mut proc_time = 0u64;
    let mut setup_cost = 0u64;
    for (m, batches) in solution.machines.iter().enumerate() {
        let mut prev = instance.machines[m].initial_attribute;
        for batch in batches {
            let Some(&first) = batch.jobs.first() else {
                continue;
            };
            let attr = instance.job(first).attribute;
            setup_cost += instance.setup_cost(prev, attr);
            proc_time += batch.processing_time as u64;
            for &j in &batch.jobs {
                completion[j.0] = batch.end();
            }
            prev = attr;
        }
    }
    let scheduled: Vec<bool> = {
        let mut s = vec![false; instance.jobs.len()];
        for j in solution.machines.iter().flatten().flat_map(|b| &b.jobs) {
            s[j.0] = true;
        }
        s
    };
    let tardy = instance
        .jobs
        .iter()
        .zip(&completion)
        .zip(&scheduled)
        .filter(|((job, &c), &s)| s && c > job.due)
        .count() as u64;
    CostBreakdown {
        proc_time,
        tardy,
        setup_cost,
        objective: weights.objective(proc_time, tardy, setup_cost, instance.jobs.len()),
        completion,
    }
}

/// `100 * (value - bound) / value`. Negative when the bound exceeds the value.
pub fn relative_gap(value: f64, bound: f64) -> Result<f64> {
    if value == 0.0 {
        return if bound == 0.0 {
            Ok(0.0)
        } else {
            Err(Error::DivisionByZero)
        };
    }
    Ok(100.0 * (value - bound) / value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_instance, example_optimal_layout};
    use crate::schedule::build_schedule;

    #[test]
    fn example_optimum_components() {
        let inst = example_instance();
        let w = ObjectiveWeights::for_instance(&inst);
        assert_eq!((w.proc_norm, w.setup_norm), (18, 10));
        let sol = build_schedule(&inst, &example_optimal_layout()).unwrap();
        let cost = evaluate(&inst, &sol, &w).unwrap();
        assert_eq!((cost.proc_time, cost.tardy, cost.setup_cost), (158, 8, 72));
        let expected = (4.0 * 158.0 / 18.0 + 72.0 / 10.0 + 100.0 * 8.0) / 1050.0;
        assert!((cost.objective - expected).abs() < 1e-12);
        assert!((cost.objective - 0.8022).abs() < 1e-4);
    }

    #[test]
    fn empty_instance_costs_nothing() {
        let mut inst = example_instance();
        inst.jobs.clear();
        let w = ObjectiveWeights::for_instance(&inst);
        let cost = evaluate(&inst, &Solution::empty(2), &w).unwrap();
        assert_eq!((cost.proc_time, cost.tardy, cost.setup_cost, cost.objective), (0, 0, 0, 0.0));
    }

    #[test]
    fn infeasible_input_is_rejected() {
        let inst = example_instance();
        let w = ObjectiveWeights::for_instance(&inst);
        assert!(matches!(
            evaluate(&inst, &Solution::empty(2), &w),
            Err(Error::InfeasibleSolution(_))
        ));
    }

    #[test]
    fn gap_examples() {
        // 5.555..., reported truncated to one decimal as 5.5
        let g = relative_gap(72.0, 68.0).unwrap();
        assert_eq!((g * 10.0).trunc() / 10.0, 5.5);
        assert_eq!(relative_gap(8.0, 7.0).unwrap(), 12.5);
        assert_eq!(relative_gap(3.5, 3.5).unwrap(), 0.0);
        assert_eq!(relative_gap(0.0, 0.0).unwrap(), 0.0);
        assert!(matches!(relative_gap(0.0, 1.0), Err(Error::DivisionByZero)));
        assert!(relative_gap(4.0, 5.0).unwrap() < 0.0);
    }

    proptest::proptest! {
        #[test]
        fn gap_is_antitone_in_bound(v in 0.1f64..1e6, a in 0.0f64..1e6, b in 0.0f64..1e6) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            proptest::prop_assert!(relative_gap(v, lo).unwrap() >= relative_gap(v, hi).unwrap());
            proptest::prop_assert_eq!(relative_gap(v, v).unwrap(), 0.0);
        }

        #[test]
        fn cost_ignores_job_order_within_batches(seed in 0u64..1000) {
            use rand::{seq::SliceRandom, SeedableRng};
            let inst = example_instance();
            let w = ObjectiveWeights::for_instance(&inst);
            let sol = build_schedule(&inst, &example_optimal_layout()).unwrap();
            let mut shuffled = sol.clone();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for b in shuffled.machines.iter_mut().flatten() {
                b.jobs.shuffle(&mut rng);
            }
            proptest::prop_assert_eq!(evaluate(&inst, &sol, &w).unwrap(), evaluate(&inst, &shuffled, &w).unwrap());
        }
    }
}
