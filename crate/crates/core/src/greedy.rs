//! Time-stepped dispatching rule: at every time unit, start batches for
//! released jobs in earliest-due-date order on idle machines.

use crate::cost::evaluate;
use crate::error::{Error, Result};
use crate::model::{
    compatible, Batch, CostBreakdown, Instance, JobId, MachineId, ObjectiveWeights, Solution, Time,
};
use crate::schedule::MachineCursor;

/// Builds a feasible schedule with the earliest-due-date dispatching rule.
///
/// Starting at time 0, the rule repeatedly takes the released, unscheduled
/// job with the earliest due date (ties: smaller id) that some eligible
/// machine can start right now, i.e. the machine is idle since at least the
/// setup time and one availability window holds setup plus processing.
/// Among such machines the larger capacity wins, then the smaller id. The
/// new batch absorbs further released jobs of the same attribute in
/// due-date order while capacity, processing-time ranges and the window
/// permit. When nothing can start, time advances by one.
pub fn construct(
    instance: &Instance,
    weights: &ObjectiveWeights,
) -> Result<(Solution, CostBreakdown)> {
    let solution = dispatch(instance)?;
    let cost = evaluate(instance, &solution, weights)?;
    Ok((solution, cost))
}

fn dispatch(instance: &Instance) -> Result<Solution> {
    let mut order: Vec<JobId> = instance.job_ids().collect();
    order.sort_by_key(|&j| (instance.job(j).due, j));

    let mut cursors: Vec<MachineCursor> = instance
        .machine_ids()
        .map(|m| MachineCursor::new(instance, m))
        .collect();
    let mut solution = Solution::empty(instance.machines.len());
    let mut scheduled = vec![false; instance.jobs.len()];
    let mut remaining = instance.jobs.len();
    let horizon = instance
        .machines
        .iter()
        .flat_map(|m| m.availability.last())
        .map(|w| w.end)
        .max()
        .unwrap_or(0);

    let mut now: Time = 0;
    while remaining > 0 {
        if now > horizon {
            let stuck = order.iter().copied().find(|j| !scheduled[j.0]);
            return Err(Error::Unschedulable(stuck.expect("remaining > 0")));
        }
        // some machine must be idle for anything to start
        if cursors.iter().all(|c| c.free_at > now) {
            now += 1;
            continue;
        }
        while let Some((machine, batch)) = next_batch(instance, &order, &scheduled, &cursors, now) {
            let attribute = instance.job(batch.jobs[0]).attribute;
            for &j in &batch.jobs {
                scheduled[j.0] = true;
            }
            remaining -= batch.jobs.len();
            let cursor = &mut cursors[machine.0];
            cursor.free_at = batch.end();
            cursor.last_attr = attribute;
            solution.machines[machine.0].push(batch);
        }
        now += 1;
    }
    Ok(solution)
}

/// End of the window holding `[now - setup, now + duration]`, if the
/// machine is free by `now - setup`.
fn window_end(instance: &Instance, cursor: &MachineCursor, setup: Time, now: Time, duration: Time) -> Option<Time> {
    let from = now - setup;
    if from < cursor.free_at {
        return None;
    }
    instance
        .machine(cursor.machine)
        .availability
        .iter()
        .find(|w| w.contains_span(from, now + duration))
        .map(|w| w.end)
}

fn next_batch(
    instance: &Instance,
    order: &[JobId],
    scheduled: &[bool],
    cursors: &[MachineCursor],
    now: Time,
) -> Option<(MachineId, Batch)> {
    let released = || {
        order
            .iter()
            .copied()
            .filter(move |&j| !scheduled[j.0] && instance.job(j).release <= now)
    };
    for lead in released() {
        let job = instance.job(lead);
        let best = job
            .eligible
            .iter()
            .map(|&m| &cursors[m.0])
            .filter(|c| instance.machine(c.machine).capacity >= job.size)
            .filter_map(|c| {
                let setup = instance.setup_time(c.last_attr, job.attribute);
                window_end(instance, c, setup, now, job.min_time).map(|end| (c, end))
            })
            .max_by_key(|(c, _)| (instance.machine(c.machine).capacity, std::cmp::Reverse(c.machine)));
        let Some((cursor, window_end)) = best else {
            continue;
        };

        let capacity = instance.machine(cursor.machine).capacity;
        let mut jobs = vec![lead];
        let mut size = job.size;
        let mut duration = job.min_time;
        let mut latest = job.max_time;
        for other in released() {
            if other == lead {
                continue;
            }
            let cand = instance.job(other);
            let longer = duration.max(cand.min_time);
            if cand.attribute != job.attribute
                || !cand.is_eligible(cursor.machine)
                || size + cand.size > capacity
                || longer > latest.min(cand.max_time)
                || now + longer > window_end
            {
                continue;
            }
            debug_assert!(compatible(job, cand));
            jobs.push(other);
            size += cand.size;
            duration = longer;
            latest = latest.min(cand.max_time);
        }
        return Some((
            cursor.machine,
            Batch {
                jobs,
                start: now,
                processing_time: duration,
            },
        ));
    }
    None
}
