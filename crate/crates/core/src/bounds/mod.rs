//! Lower bounds on the optimal cost of an instance.
//!
//! Batch counts and cumulative processing times are bounded per attribute
//! from three angles (capacity, machine eligibility of small jobs, and a
//! clique cover of processing-time ranges). Setup costs are bounded from the
//! resulting batch counts, tardiness by scheduling every job alone as early
//! as possible.

pub mod gac;
mod setup;
mod tardy;

use std::time::{Duration, Instant};

pub use gac::{gac_plus, CoverCost, UnitJobs};
pub use setup::{setup_cost_lb, SetupBound};
pub use tardy::{tardy_lb, TardyBound};

use crate::error::Result;
use crate::model::{Attr, Instance, JobId, ObjectiveWeights};

/// Per-attribute bound breakdown. `*_small` values exclude large jobs;
/// `b_best` and `p_best` add them back once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeBoundDetail {
    pub attribute: Attr,
    pub large_jobs: Vec<JobId>,
    pub small_jobs: Vec<JobId>,
    pub b_capacity: u64,
    pub b_large_small: u64,
    pub b_elig_small: u64,
    pub b_gac_small: u64,
    pub p_large: u64,
    pub p_elig_small: u64,
    pub p_gac_small: u64,
    pub b_best: u64,
    pub p_best: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub per_attribute: Vec<AttributeBoundDetail>,
    pub batches_lb: u64,
    pub proc_lb: u64,
    pub setup_lb: u64,
    pub setup_lb_before: u64,
    pub setup_lb_after: u64,
    pub tardy_lb: u64,
    pub tardy_jobs: Vec<JobId>,
    pub objective_lb: f64,
    pub wall_time: Duration,
}

impl BoundReport {
    pub fn scaled(&self, weights: &ObjectiveWeights) -> u128 {
        weights.scaled(self.proc_lb, self.tardy_lb, self.setup_lb)
    }
}

/// Splits the jobs of `attribute` into large jobs (no same-attribute
/// partner fits with them on any of their machines) and small jobs.
/// A job without same-attribute partners counts as large.
pub fn classify_large_small(instance: &Instance, attribute: Attr) -> (Vec<JobId>, Vec<JobId>) {
    let members: Vec<JobId> = instance.jobs_with_attribute(attribute).collect();
    // two smallest sizes, so that "every other job" is one lookup
    let mut smallest = [u64::MAX; 2];
    let mut smallest_job = None;
    for &j in &members {
        let s = instance.job(j).size;
        if s < smallest[0] {
            smallest = [s, smallest[0]];
            smallest_job = Some(j);
        } else if s < smallest[1] {
            smallest[1] = s;
        }
    }
    members.into_iter().partition(|&j| {
        let job = instance.job(j);
        let partner = if Some(j) == smallest_job { smallest[1] } else { smallest[0] };
        partner == u64::MAX || job.size + partner > instance.max_eligible_capacity(job)
    })
}

fn max_capacity(instance: &Instance) -> u64 {
    instance.max_capacity().max(1)
}

fn total_size(instance: &Instance, jobs: &[JobId]) -> u64 {
    jobs.iter().map(|&j| instance.job(j).size).sum()
}

/// Capacity bound on the number of batches, without and with the
/// large/small distinction.
pub fn batch_lb_capacity(instance: &Instance, attribute: Attr) -> (u64, u64) {
    let (large, small) = classify_large_small(instance, attribute);
    let cap = max_capacity(instance);
    let all = total_size(instance, &large) + total_size(instance, &small);
    (
        all.div_ceil(cap),
        large.len() as u64 + total_size(instance, &small).div_ceil(cap),
    )
}

/// Small-job batch bound from machine eligibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EligibilityBound {
    /// Batches forced onto each machine by single-machine small jobs.
    pub forced: Vec<u64>,
    /// Extra batches for multi-machine small jobs that do not fit into the
    /// leftover room of the forced batches.
    pub spill: u64,
    pub small_batches: u64,
}

fn eligibility_bound(instance: &Instance, small: &[JobId]) -> EligibilityBound {
    let k = instance.machines.len();
    let mut forced_size = vec![0u64; k];
    let mut multi_size = 0u64;
    for &j in small {
        let job = instance.job(j);
        match job.eligible.as_slice() {
            [only] => forced_size[only.0] += job.size,
            _ => multi_size += job.size,
        }
    }
    let mut forced = vec![0u64; k];
    let mut leftover = 0u64;
    for (m, machine) in instance.machines.iter().enumerate() {
        forced[m] = forced_size[m].div_ceil(machine.capacity.max(1));
        leftover += forced[m] * machine.capacity - forced_size[m];
    }
    let spill = multi_size.saturating_sub(leftover).div_ceil(max_capacity(instance));
    EligibilityBound {
        small_batches: forced.iter().sum::<u64>() + spill,
        forced,
        spill,
    }
}

pub fn batch_lb_eligibility(instance: &Instance, attribute: Attr) -> EligibilityBound {
    let (_, small) = classify_large_small(instance, attribute);
    eligibility_bound(instance, &small)
}

fn proc_eligibility(instance: &Instance, small: &[JobId], elig: &EligibilityBound) -> u64 {
    let mut forced_times: Vec<Vec<i64>> = vec![Vec::new(); instance.machines.len()];
    let mut multi_times = Vec::new();
    for &j in small {
        let job = instance.job(j);
        match job.eligible.as_slice() {
            [only] => forced_times[only.0].push(job.min_time),
            _ => multi_times.push(job.min_time),
        }
    }
    let mut terms = Vec::new();
    for (times, &count) in forced_times.iter_mut().zip(&elig.forced) {
        times.sort_unstable();
        terms.extend(times.iter().take(count as usize));
    }
    multi_times.sort_unstable();
    terms.extend(multi_times.iter().take(elig.spill as usize));

    let mut sum: i64 = terms.iter().sum();
    // The batch holding the longest small job runs at least that long.
    let longest = small.iter().map(|&j| instance.job(j).min_time).max();
    if let (Some(&largest_term), Some(longest)) = (terms.iter().max(), longest) {
        if longest > largest_term {
            sum += longest - largest_term;
        }
    }
    sum as u64
}

/// Cumulative processing time bound for the small jobs of `attribute` from
/// machine eligibility.
pub fn proc_lb_eligibility(instance: &Instance, attribute: Attr) -> u64 {
    let (_, small) = classify_large_small(instance, attribute);
    let elig = eligibility_bound(instance, &small);
    proc_eligibility(instance, &small, &elig)
}

fn gac_bound(instance: &Instance, small: &[JobId]) -> CoverCost {
    let units: Vec<UnitJobs> = small
        .iter()
        .map(|&j| {
            let job = instance.job(j);
            UnitJobs::new(job.min_time, job.max_time, job.size)
        })
        .collect();
    gac_plus(&units, max_capacity(instance))
}

pub fn attribute_bounds(instance: &Instance, attribute: Attr) -> AttributeBoundDetail {
    let (large, small) = classify_large_small(instance, attribute);
    let cap = max_capacity(instance);
    let large_size = total_size(instance, &large);
    let small_size = total_size(instance, &small);
    let elig = eligibility_bound(instance, &small);
    let gac = gac_bound(instance, &small);
    let p_large: i64 = large.iter().map(|&j| instance.job(j).min_time).sum();
    let p_elig_small = proc_eligibility(instance, &small, &elig);
    let n_large = large.len() as u64;
    AttributeBoundDetail {
        attribute,
        b_capacity: (large_size + small_size).div_ceil(cap),
        b_large_small: n_large + small_size.div_ceil(cap),
        b_elig_small: elig.small_batches,
        b_gac_small: gac.batches,
        p_large: p_large as u64,
        p_elig_small,
        p_gac_small: gac.proc_time,
        b_best: n_large + elig.small_batches.max(gac.batches),
        p_best: p_large as u64 + p_elig_small.max(gac.proc_time),
        large_jobs: large,
        small_jobs: small,
    }
}

/// Sums the best per-attribute batch and processing time bounds.
pub fn combine_overall(details: &[AttributeBoundDetail]) -> (u64, u64) {
    details
        .iter()
        .fold((0, 0), |(b, p), d| (b + d.b_best, p + d.p_best))
}

/// Runs every component bound and aggregates them into an objective bound.
pub fn objective_lb(instance: &Instance, weights: &ObjectiveWeights) -> Result<BoundReport> {
    let started = Instant::now();
    let per_attribute: Vec<_> = instance
        .attributes()
        .map(|r| attribute_bounds(instance, r))
        .collect();
    let (batches_lb, proc_lb) = combine_overall(&per_attribute);
    let per_attr_batches: Vec<u64> = per_attribute.iter().map(|d| d.b_best).collect();
    let setup = setup_cost_lb(instance, &per_attr_batches);
    let tardy = tardy_lb(instance, true)?;
    let objective_lb = weights.objective(proc_lb, tardy.count, setup.value, instance.jobs.len());
    Ok(BoundReport {
        per_attribute,
        batches_lb,
        proc_lb,
        setup_lb: setup.value,
        setup_lb_before: setup.before,
        setup_lb_after: setup.after,
        tardy_lb: tardy.count,
        tardy_jobs: tardy.jobs,
        objective_lb,
        wall_time: started.elapsed(),
    })
}
