//! Exhaustive search for tiny instances, optionally cut by lower bounds.

mod clique;

use std::collections::HashMap;

use crate::bounds::objective_lb;
use crate::cost::evaluate;
use crate::error::{Error, Result};
use crate::greedy::construct;
use crate::model::{
    Attr, Batch, CostBreakdown, Instance, JobId, Layout, MachineId, ObjectiveWeights, Solution,
    Time, Window,
};
use crate::schedule::MachineCursor;

pub use clique::{min_clique_cover, min_clique_cover_units, CliqueCover};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_jobs: usize,
    /// Latest availability end the search accepts.
    pub max_time_horizon: Time,
    pub node_budget: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_jobs: 9,
            max_time_horizon: 1_000_000,
            node_budget: 50_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub solution: Solution,
    pub cost: CostBreakdown,
    /// Search nodes visited.
    pub nodes: u64,
    /// Subtrees cut by a lower bound.
    pub lb_cuts: u64,
}

/// Finds a minimum-objective schedule by enumerating every ordered batch
/// layout, machine by machine. Batches are placed as early as possible,
/// which loses nothing since all objective terms grow with completion
/// times. Among equal objectives the layout with the smallest encoding
/// (job ids sorted inside batches) wins.
///
/// With `prune_with_lb`, each node bounds the rest of the schedule with
/// [`objective_lb`] on the residual instance (open machines, remaining
/// jobs, current machine clipped to its free time) and is cut when that
/// bound exceeds the incumbent. Ties are never cut, so the result is the
/// same with and without pruning.
pub fn exact_solve(
    instance: &Instance,
    weights: &ObjectiveWeights,
    limits: &OracleLimits,
    prune_with_lb: bool,
) -> Result<OracleOutcome> {
    let n = instance.jobs.len();
    if n > limits.max_jobs || n > 63 {
        return Err(Error::TooManyJobs {
            jobs: n,
            limit: limits.max_jobs.min(63),
        });
    }
    let end = instance
        .machines
        .iter()
        .flat_map(|m| &m.availability)
        .map(|w| w.end)
        .max()
        .unwrap_or(0);
    if end > limits.max_time_horizon {
        return Err(Error::HorizonExceeded {
            end,
            limit: limits.max_time_horizon,
        });
    }

    let threshold = if prune_with_lb {
        construct(instance, weights)
            .ok()
            .map(|(_, c)| c.scaled(weights))
    } else {
        None
    };
    let k = instance.machines.len();
    let mut search = Search {
        instance,
        weights,
        limits,
        prune: prune_with_lb,
        candidates: instance.machine_ids().map(|m| candidates(instance, m)).collect(),
        eligible_on: instance
            .jobs
            .iter()
            .map(|j| j.eligible.iter().fold(0u64, |acc, m| acc | 1 << m.0))
            .collect(),
        path: vec![Vec::new(); k],
        best: None,
        threshold,
        memo: HashMap::new(),
        nodes: 0,
        lb_cuts: 0,
    };
    if k > 0 {
        let cursor = MachineCursor::new(instance, MachineId(0));
        search.visit((1u64 << n) - 1, cursor, Partial::default())?;
    } else if n == 0 {
        search.best = Some((0, Vec::new()));
    }
    let (nodes, lb_cuts) = (search.nodes, search.lb_cuts);
    let Some((_, machines)) = search.best else {
        return Err(Error::Infeasible);
    };
    let solution = Solution { machines };
    let cost = evaluate(instance, &solution, weights)?;
    Ok(OracleOutcome {
        solution,
        cost,
        nodes,
        lb_cuts,
    })
}

/// Admissible batches of `machine` as job bitmasks, ignoring time.
fn candidates(instance: &Instance, machine: MachineId) -> Vec<u64> {
    let n = instance.jobs.len();
    let capacity = instance.machine(machine).capacity;
    (1u64..1 << n)
        .filter(|&mask| {
            let jobs: Vec<_> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &instance.jobs[i]).collect();
            let attribute = jobs[0].attribute;
            jobs.iter().all(|j| j.attribute == attribute && j.is_eligible(machine))
                && jobs.iter().map(|j| j.size).sum::<u64>() <= capacity
                && jobs.iter().map(|j| j.min_time).max() <= jobs.iter().map(|j| j.max_time).min()
        })
        .collect()
}

fn jobs_of(mask: u64) -> Vec<JobId> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(JobId).collect()
}

#[derive(Debug, Clone, Copy, Default)]
struct Partial {
    proc_time: u64,
    tardy: u64,
    setup_cost: u64,
}

type Residual = (u64, usize, Time, Attr);

struct Search<'a> {
    instance: &'a Instance,
    weights: &'a ObjectiveWeights,
    limits: &'a OracleLimits,
    prune: bool,
    candidates: Vec<Vec<u64>>,
    eligible_on: Vec<u64>,
    path: Vec<Vec<Batch>>,
    best: Option<(u128, Vec<Vec<Batch>>)>,
    threshold: Option<u128>,
    memo: HashMap<Residual, Option<Partial>>,
    nodes: u64,
    lb_cuts: u64,
}

impl Search<'_> {
    fn visit(&mut self, remaining: u64, cursor: MachineCursor, acc: Partial) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limits.node_budget {
            return Err(Error::BudgetExceeded { nodes: self.nodes });
        }
        if remaining == 0 {
            self.leaf(acc);
            return Ok(());
        }
        if self.prune && self.cut(remaining, &cursor, acc) {
            self.lb_cuts += 1;
            return Ok(());
        }

        let m = cursor.machine.0;
        for i in 0..self.candidates[m].len() {
            let mask = self.candidates[m][i];
            if mask & !remaining != 0 {
                continue;
            }
            let jobs = jobs_of(mask);
            let Ok(placement) = cursor.plan(self.instance, &jobs) else {
                continue;
            };
            let mut next = cursor;
            next.commit(&placement);
            let late = jobs
                .iter()
                .filter(|&&j| placement.end() > self.instance.job(j).due)
                .count() as u64;
            let acc = Partial {
                proc_time: acc.proc_time + placement.processing_time as u64,
                tardy: acc.tardy + late,
                setup_cost: acc.setup_cost + placement.setup_cost,
            };
            self.path[m].push(Batch {
                jobs,
                start: placement.start,
                processing_time: placement.processing_time,
            });
            let outcome = self.visit(remaining & !mask, next, acc);
            self.path[m].pop();
            outcome?;
        }

        // close this machine; every remaining job needs a later one
        let later = m + 1;
        if later < self.instance.machines.len() {
            let open = !((1u64 << later) - 1);
            let placeable = jobs_of(remaining)
                .iter()
                .all(|j| self.eligible_on[j.0] & open != 0);
            if placeable {
                let cursor = MachineCursor::new(self.instance, MachineId(later));
                self.visit(remaining, cursor, acc)?;
            }
        }
        Ok(())
    }

    fn leaf(&mut self, acc: Partial) {
        let value = self.weights.scaled(acc.proc_time, acc.tardy, acc.setup_cost);
        let better = match &self.best {
            None => true,
            Some((v, machines)) => {
                value < *v || (value == *v && encode(&self.path) < encode(machines))
            }
        };
        if better {
            self.best = Some((value, self.path.clone()));
            self.threshold = Some(self.threshold.map_or(value, |t| t.min(value)));
        }
    }

    fn cut(&mut self, remaining: u64, cursor: &MachineCursor, acc: Partial) -> bool {
        let Some(threshold) = self.threshold else {
            return false;
        };
        let key = (remaining, cursor.machine.0, cursor.free_at, cursor.last_attr);
        let rest = match self.memo.get(&key) {
            Some(&r) => r,
            None => {
                let r = residual_bound(self.instance, self.weights, remaining, cursor);
                self.memo.insert(key, r);
                r
            }
        };
        let Some(rest) = rest else {
            return true;
        };
        let bound = self.weights.scaled(
            acc.proc_time + rest.proc_time,
            acc.tardy + rest.tardy,
            acc.setup_cost + rest.setup_cost,
        );
        bound > threshold
    }
}

fn encode(machines: &[Vec<Batch>]) -> Layout {
    crate::model::canonical(
        machines
            .iter()
            .map(|bs| bs.iter().map(|b| b.jobs.clone()).collect())
            .collect(),
    )
}

/// Component bounds for scheduling the `remaining` jobs on the current and
/// later machines. `None` when some job cannot be placed at all.
fn residual_bound(
    instance: &Instance,
    weights: &ObjectiveWeights,
    remaining: u64,
    cursor: &MachineCursor,
) -> Option<Partial> {
    let first = cursor.machine.0;
    let machines = instance.machines[first..]
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let mut m = m.clone();
            if i == 0 {
                m.initial_attribute = cursor.last_attr;
                m.availability = m
                    .availability
                    .iter()
                    .filter(|w| w.end > cursor.free_at)
                    .map(|w| Window::new(w.start.max(cursor.free_at), w.end))
                    .collect();
            }
            m
        })
        .collect();
    let mut jobs = Vec::new();
    for j in jobs_of(remaining) {
        let mut job = instance.job(j).clone();
        job.eligible = job
            .eligible
            .iter()
            .filter(|m| m.0 >= first)
            .map(|m| MachineId(m.0 - first))
            .collect();
        if job.eligible.is_empty() {
            return None;
        }
        jobs.push(job);
    }
    let sub = Instance {
        machines,
        jobs,
        attribute_count: instance.attribute_count,
        setup_times: instance.setup_times.clone(),
        setup_costs: instance.setup_costs.clone(),
    };
    let report = objective_lb(&sub, weights).ok()?;
    Some(Partial {
        proc_time: report.proc_lb,
        tardy: report.tardy_lb,
        setup_cost: report.setup_lb,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_instance, example_optimal_layout};
    use crate::model::{Job, Machine};

    #[test]
    fn example_optimum() {
        let inst = example_instance();
        let w = ObjectiveWeights::for_instance(&inst);
        let limits = OracleLimits {
            max_jobs: 10,
            ..OracleLimits::default()
        };
        let out = exact_solve(&inst, &w, &limits, true).unwrap();
        assert_eq!((out.cost.proc_time, out.cost.tardy, out.cost.setup_cost), (158, 8, 72));
        assert!((out.cost.objective - 0.8022).abs() < 1e-3);
        let reference = crate::schedule::build_schedule(&inst, &example_optimal_layout()).unwrap();
        let reference = evaluate(&inst, &reference, &w).unwrap();
        assert_eq!(reference.scaled(&w), out.cost.scaled(&w));
    }

    fn tiny() -> Instance {
        let mut inst = example_instance();
        inst.jobs.truncate(5);
        inst
    }

    #[test]
    fn pruning_keeps_the_answer() {
        let inst = tiny();
        let w = ObjectiveWeights::for_instance(&inst);
        let limits = OracleLimits::default();
        let plain = exact_solve(&inst, &w, &limits, false).unwrap();
        let cut = exact_solve(&inst, &w, &limits, true).unwrap();
        assert_eq!(plain.solution, cut.solution);
        assert!(cut.nodes <= plain.nodes);
        assert_eq!(plain.lb_cuts, 0);
    }

    #[test]
    fn single_job() {
        let mut inst = tiny();
        inst.jobs.truncate(1);
        let w = ObjectiveWeights::for_instance(&inst);
        let out = exact_solve(&inst, &w, &OracleLimits::default(), false).unwrap();
        assert_eq!(out.solution.batch_count(), 1);
        // job 1 fits machine 1 at 21, before machine 2 opens
        assert_eq!(out.solution.machines[0][0].start, 21);
    }

    #[test]
    fn limits() {
        let inst = example_instance();
        let w = ObjectiveWeights::for_instance(&inst);
        assert!(matches!(
            exact_solve(&inst, &w, &OracleLimits::default(), true),
            Err(Error::TooManyJobs { jobs: 10, limit: 9 })
        ));
        let inst = tiny();
        let small = OracleLimits {
            node_budget: 3,
            ..OracleLimits::default()
        };
        assert!(matches!(exact_solve(&inst, &w, &small, false), Err(Error::BudgetExceeded { .. })));
        let short = OracleLimits {
            max_time_horizon: 100,
            ..OracleLimits::default()
        };
        assert!(matches!(exact_solve(&inst, &w, &short, false), Err(Error::HorizonExceeded { end: 259, .. })));
    }

    #[test]
    fn infeasible() {
        let job = |size| Job {
            attribute: Attr(0),
            size,
            release: 0,
            due: 10,
            min_time: 8,
            max_time: 8,
            eligible: vec![MachineId(0)],
        };
        let inst = Instance {
            machines: vec![Machine {
                capacity: 5,
                initial_attribute: Attr(0),
                availability: vec![Window::new(0, 10)],
            }],
            jobs: vec![job(4), job(4)],
            attribute_count: 1,
            setup_times: vec![vec![0]],
            setup_costs: vec![vec![0]],
        };
        let w = ObjectiveWeights::for_instance(&inst);
        for prune in [false, true] {
            assert!(matches!(
                exact_solve(&inst, &w, &OracleLimits::default(), prune),
                Err(Error::Infeasible)
            ));
        }
    }
}
