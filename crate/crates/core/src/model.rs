//! Domain types for oven scheduling instances and solutions.
//!
//! Identifiers wrap zero-based indices. Everything facing a human (files,
//! messages, CLI output) uses the one-based `number()`.

use std::fmt;

/// Non-negative integer time. Signed so that setup windows can be computed
/// without underflow checks; validation rejects negative inputs.
pub type Time = i64;

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident, $prefix:literal) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub usize);

        impl $name {
            /// Builds the id from its one-based number.
            pub fn from_number(number: usize) -> Self {
                assert!(number >= 1, "ids are one-based");
                Self(number - 1)
            }

            pub fn index(self) -> usize {
                self.0
            }

            pub fn number(self) -> usize {
                self.0 + 1
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.number())
            }
        }
    };
}

id_type!(
    /// A job, numbered 1..=n.
    JobId,
    "job "
);
id_type!(
    /// A machine (oven), numbered 1..=k.
    MachineId,
    "machine "
);
id_type!(
    /// A job attribute (family), numbered 1..=a.
    Attr,
    "attribute "
);

/// Closed availability window `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub start: Time,
    pub end: Time,
}

impl Window {
    pub fn new(start: Time, end: Time) -> Self {
        Self { start, end }
    }

    pub fn contains_span(&self, from: Time, to: Time) -> bool {
        self.start <= from && to <= self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Machine {
    pub capacity: u64,
    pub initial_attribute: Attr,
    /// Sorted, pairwise disjoint.
    pub availability: Vec<Window>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    pub attribute: Attr,
    pub size: u64,
    pub release: Time,
    pub due: Time,
    pub min_time: Time,
    pub max_time: Time,
    /// Sorted and deduplicated.
    pub eligible: Vec<MachineId>,
}

impl Job {
    pub fn is_eligible(&self, machine: MachineId) -> bool {
        self.eligible.binary_search(&machine).is_ok()
    }
}

/// Two jobs may share a batch only if their processing-time ranges overlap.
pub fn compatible(a: &Job, b: &Job) -> bool {
    a.min_time.max(b.min_time) <= a.max_time.min(b.max_time)
}

/// An oven scheduling instance. Fields are public so tests and generators can
/// build instances directly; run [`crate::validate_instance`] before trusting
/// one from outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub machines: Vec<Machine>,
    pub jobs: Vec<Job>,
    pub attribute_count: usize,
    /// `setup_times[from][to]`
    pub setup_times: Vec<Vec<Time>>,
    /// `setup_costs[from][to]`
    pub setup_costs: Vec<Vec<u64>>,
}

impl Instance {
    pub fn job(&self, id: JobId) -> &Job {
        &self.jobs[id.0]
    }

    pub fn machine(&self, id: MachineId) -> &Machine {
        &self.machines[id.0]
    }

    pub fn job_ids(&self) -> impl Iterator<Item = JobId> + '_ {
        (0..self.jobs.len()).map(JobId)
    }

    pub fn machine_ids(&self) -> impl Iterator<Item = MachineId> + '_ {
        (0..self.machines.len()).map(MachineId)
    }

    pub fn attributes(&self) -> impl Iterator<Item = Attr> {
        (0..self.attribute_count).map(Attr)
    }

    pub fn setup_time(&self, from: Attr, to: Attr) -> Time {
        self.setup_times[from.0][to.0]
    }

    pub fn setup_cost(&self, from: Attr, to: Attr) -> u64 {
        self.setup_costs[from.0][to.0]
    }

    pub fn max_capacity(&self) -> u64 {
        self.machines.iter().map(|m| m.capacity).max().unwrap_or(0)
    }

    /// Largest capacity among the machines a job may use.
    pub fn max_eligible_capacity(&self, job: &Job) -> u64 {
        job.eligible
            .iter()
            .map(|&m| self.machine(m).capacity)
            .max()
            .unwrap_or(0)
    }

    pub fn jobs_with_attribute(&self, attribute: Attr) -> impl Iterator<Item = JobId> + '_ {
        self.job_ids()
            .filter(move |&j| self.job(j).attribute == attribute)
    }
}

/// A batch placed on a machine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Batch {
    pub jobs: Vec<JobId>,
    pub start: Time,
    pub processing_time: Time,
}

impl Batch {
    pub fn end(&self) -> Time {
        self.start + self.processing_time
    }
}

/// Per-machine ordered job sets: the representation the schedule builder
/// and the local search operate on.
pub type Layout = Vec<Vec<Vec<JobId>>>;

/// A schedule: for every machine, its batches in processing order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Solution {
    pub machines: Vec<Vec<Batch>>,
}

impl Solution {
    pub fn empty(machine_count: usize) -> Self {
        Self {
            machines: vec![Vec::new(); machine_count],
        }
    }

    pub fn layout(&self) -> Layout {
        self.machines
            .iter()
            .map(|batches| batches.iter().map(|b| b.jobs.clone()).collect())
            .collect()
    }

    pub fn batch_count(&self) -> usize {
        self.machines.iter().map(Vec::len).sum()
    }

    /// Layout with job ids sorted inside every batch. Used as the
    /// deterministic tie-break key among equal-cost schedules.
    pub fn canonical_layout(&self) -> Layout {
        canonical(self.layout())
    }
}

pub fn canonical(mut layout: Layout) -> Layout {
    for batches in &mut layout {
        for jobs in batches.iter_mut() {
            jobs.sort_unstable();
        }
    }
    layout
}

/// Objective weights plus the normalizers for runtime and setup cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObjectiveWeights {
    pub w_p: u64,
    pub w_t: u64,
    pub w_sc: u64,
    pub proc_norm: u64,
    pub setup_norm: u64,
}

impl ObjectiveWeights {
    pub const DEFAULT_W_P: u64 = 4;
    pub const DEFAULT_W_T: u64 = 100;
    pub const DEFAULT_W_SC: u64 = 1;

    /// Default weights with normalizers derived from the instance:
    /// `proc_norm = ceil(sum mint / n)` and `setup_norm = max sc entry`,
    /// both clamped to at least 1.
    pub fn for_instance(instance: &Instance) -> Self {
        Self::with_weights(
            instance,
            Self::DEFAULT_W_P,
            Self::DEFAULT_W_T,
            Self::DEFAULT_W_SC,
        )
    }

    pub fn with_weights(instance: &Instance, w_p: u64, w_t: u64, w_sc: u64) -> Self {
        let n = instance.jobs.len() as u64;
        let total_min: u64 = instance.jobs.iter().map(|j| j.min_time.max(0) as u64).sum();
        let proc_norm = if n == 0 { 1 } else { total_min.div_ceil(n).max(1) };
        let setup_norm = instance
            .setup_costs
            .iter()
            .flatten()
            .copied()
            .max()
            .unwrap_or(0)
            .max(1);
        Self {
            w_p,
            w_t,
            w_sc,
            proc_norm,
            setup_norm,
        }
    }

    pub fn weight_sum(&self) -> u64 {
        self.w_p + self.w_t + self.w_sc
    }

    /// The objective multiplied by `proc_norm * setup_norm * n * (w_p + w_t + w_sc)`.
    /// Exact, so it is what searches compare.
    pub fn scaled(&self, proc_time: u64, tardy: u64, setup_cost: u64) -> u128 {
        let (p, t, sc) = (proc_time as u128, tardy as u128, setup_cost as u128);
        let (pn, sn) = (self.proc_norm as u128, self.setup_norm as u128);
        self.w_p as u128 * p * sn + self.w_sc as u128 * sc * pn + self.w_t as u128 * t * pn * sn
    }

    /// The factor that turns [`Self::scaled`] back into the normalized objective.
    pub fn scale(&self, job_count: usize) -> u128 {
        self.proc_norm as u128
            * self.setup_norm as u128
            * job_count as u128
            * self.weight_sum() as u128
    }

    /// `(w_p p / proc_norm + w_sc sc / setup_norm + w_t t) / (n (w_p + w_t + w_sc))`.
    pub fn objective(&self, proc_time: u64, tardy: u64, setup_cost: u64, job_count: usize) -> f64 {
        let scale = self.scale(job_count);
        if scale == 0 {
            return 0.0;
        }
        self.scaled(proc_time, tardy, setup_cost) as f64 / scale as f64
    }
}

/// Objective components of a schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct CostBreakdown {
    pub proc_time: u64,
    pub tardy: u64,
    pub setup_cost: u64,
    pub objective: f64,
    /// Completion time of every job, indexed by job.
    pub completion: Vec<Time>,
}

impl CostBreakdown {
    pub fn scaled(&self, weights: &ObjectiveWeights) -> u128 {
        weights.scaled(self.proc_time, self.tardy, self.setup_cost)
    }
}
