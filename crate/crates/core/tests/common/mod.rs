#![allow(dead_code)]

use osp_core::io::{generate_instance, GeneratorConfig};
use osp_core::{exact_solve, Error, Instance, JobId, ObjectiveWeights, OracleLimits, OracleOutcome};

pub fn tiny(n: usize, seed: u64) -> Instance {
    generate_instance(&GeneratorConfig::tiny(n, seed)).unwrap()
}

pub fn limits() -> OracleLimits {
    OracleLimits::default()
}

/// Optimum under `weights`, or `None` when the instance has no feasible
/// schedule.
pub fn optimum(instance: &Instance, weights: &ObjectiveWeights, prune: bool) -> Option<OracleOutcome> {
    match exact_solve(instance, weights, &limits(), prune) {
        Ok(out) => Some(out),
        Err(Error::Infeasible) => None,
        Err(e) => panic!("oracle failed: {e}"),
    }
}

/// The first `count` tiny instances with a feasible schedule, cycling
/// the job count through `sizes`.
pub fn solvable(count: usize, sizes: std::ops::RangeInclusive<usize>) -> Vec<Instance> {
    let sizes: Vec<usize> = sizes.collect();
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < count {
        let inst = tiny(sizes[seed as usize % sizes.len()], seed);
        seed += 1;
        if optimum(&inst, &ObjectiveWeights::for_instance(&inst), true).is_some() {
            out.push(inst);
        }
        assert!(seed < 20 * count as u64, "too few feasible instances");
    }
    out
}

pub fn without_job(instance: &Instance, job: JobId) -> Instance {
    let mut out = instance.clone();
    out.jobs.remove(job.0);
    out
}

/// Jobs listed in reverse order.
pub fn reversed(instance: &Instance) -> Instance {
    let mut out = instance.clone();
    out.jobs.reverse();
    out
}
