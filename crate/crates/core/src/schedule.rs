//! Deterministic schedule construction from a batch layout.
//!
//! Every batch runs for the largest minimal processing time of its members
//! and starts as early as the release dates, the preceding batch plus setup,
//! and the availability windows allow.

use crate::error::{BatchRejection, Error, Result};
use crate::model::{Attr, Batch, Instance, JobId, Layout, MachineId, Solution, Time};

/// Smallest setup time any batch of `attr` can be preceded by.
pub fn min_setup_into(instance: &Instance, attr: Attr) -> Time {
    instance
        .attributes()
        .map(|from| instance.setup_time(from, attr))
        .min()
        .unwrap_or(0)
}

/// Earliest completion of `job` run alone on `machine`, assuming a setup of
/// `setup` time units right before it. `None` if no window fits.
pub fn earliest_solo_completion(
    instance: &Instance,
    job: JobId,
    machine: MachineId,
    setup: Time,
) -> Option<Time> {
    let j = instance.job(job);
    instance
        .machine(machine)
        .availability
        .iter()
        .find_map(|w| {
            let start = j.release.max(w.start + setup);
            (start + j.min_time <= w.end).then_some(start + j.min_time)
        })
}

/// Where and how a batch would run if appended to a machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    pub start: Time,
    pub processing_time: Time,
    pub attribute: Attr,
    pub setup_time: Time,
    pub setup_cost: u64,
}

impl Placement {
    pub fn end(&self) -> Time {
        self.start + self.processing_time
    }
}

/// Tail state of a machine while batches are appended left to right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MachineCursor {
    pub machine: MachineId,
    /// End of the last placed batch (0 before the first).
    pub free_at: Time,
    /// Attribute of the last placed batch, or the initial state.
    pub last_attr: Attr,
}

impl MachineCursor {
    pub fn new(instance: &Instance, machine: MachineId) -> Self {
        Self {
            machine,
            free_at: 0,
            last_attr: instance.machine(machine).initial_attribute,
        }
    }

    /// Computes the placement of `jobs` as the next batch without
    /// committing it.
    pub fn plan(&self, instance: &Instance, jobs: &[JobId]) -> Result<Placement, BatchRejection> {
        let first = *jobs.first().ok_or(BatchRejection::Empty)?;
        let machine = instance.machine(self.machine);
        let attribute = instance.job(first).attribute;
        let mut size = 0u64;
        let mut processing_time = Time::MIN;
        let mut latest_end = Time::MAX;
        let mut ready = 0;
        for &id in jobs {
            let job = instance.job(id);
            if job.attribute != attribute {
                return Err(BatchRejection::MixedAttributes);
            }
            if !job.is_eligible(self.machine) {
                return Err(BatchRejection::Ineligible(id));
            }
            size += job.size;
            processing_time = processing_time.max(job.min_time);
            latest_end = latest_end.min(job.max_time);
            ready = ready.max(job.release);
        }
        if size > machine.capacity {
            return Err(BatchRejection::OverCapacity {
                size,
                capacity: machine.capacity,
            });
        }
        if processing_time > latest_end {
            return Err(BatchRejection::IncompatibleTimes);
        }
        let setup_time = instance.setup_time(self.last_attr, attribute);
        let lower = ready.max(self.free_at + setup_time);
        let start = machine
            .availability
            .iter()
            .find_map(|w| {
                let s = lower.max(w.start + setup_time);
                (s + processing_time <= w.end).then_some(s)
            })
            .ok_or(BatchRejection::NoWindow)?;
        Ok(Placement {
            start,
            processing_time,
            attribute,
            setup_time,
            setup_cost: instance.setup_cost(self.last_attr, attribute),
        })
    }

    pub fn commit(&mut self, placement: &Placement) {
        self.free_at = placement.end();
        self.last_attr = placement.attribute;
    }
}

/// Schedules a single machine's batch sequence.
pub fn schedule_machine(
    instance: &Instance,
    machine: MachineId,
    batches: &[Vec<JobId>],
) -> Result<Vec<Batch>> {
    let mut cursor = MachineCursor::new(instance, machine);
    batches
        .iter()
        .enumerate()
        .map(|(position, jobs)| {
            let placement = cursor
                .plan(instance, jobs)
                .map_err(|reason| Error::InfeasibleBatch {
                    machine,
                    position,
                    reason,
                })?;
            cursor.commit(&placement);
            Ok(Batch {
                jobs: jobs.clone(),
                start: placement.start,
                processing_time: placement.processing_time,
            })
        })
        .collect()
}

/// Turns a layout into a timed schedule. Missing trailing machines are
/// treated as empty; a job may appear at most once. The layout does not
/// have to cover every job; [`crate::check_feasibility`] reports missing ones.
pub fn build_schedule(instance: &Instance, layout: &Layout) -> Result<Solution> {
    let k = instance.machines.len();
    if layout.len() > k {
        return Err(Error::LayoutShape {
            expected: k,
            got: layout.len(),
        });
    }
    let mut seen = vec![false; instance.jobs.len()];
    for (m, batches) in layout.iter().enumerate() {
        for (position, jobs) in batches.iter().enumerate() {
            for &j in jobs {
                if j.0 >= seen.len() || std::mem::replace(&mut seen[j.0], true) {
                    return Err(Error::InfeasibleBatch {
                        machine: MachineId(m),
                        position,
                        reason: BatchRejection::BadJob(j),
                    });
                }
            }
        }
    }
    let mut solution = Solution::empty(k);
    for (m, batches) in layout.iter().enumerate() {
        solution.machines[m] = schedule_machine(instance, MachineId(m), batches)?;
    }
    Ok(solution)
}
