use std::fmt;

use crate::model::{Instance, JobId, MachineId};
use crate::schedule::{earliest_solo_completion, min_setup_into};

/// One broken instance rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceViolation {
    NoAttributes,
    MatrixShape { matrix: &'static str },
    NegativeSetupTime,
    ZeroCapacity(MachineId),
    InitialAttribute(MachineId),
    Windows(MachineId),
    JobAttribute(JobId),
    ZeroSize(JobId),
    JobTimes(JobId),
    Eligibility(JobId),
    TooLarge(JobId),
    NoWindow(JobId),
}

impl fmt::Display for InstanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use InstanceViolation::*;
        match self {
            NoAttributes => write!(f, "attribute count must be positive"),
            MatrixShape { matrix } => write!(f, "{matrix} matrix is not attribute_count x attribute_count"),
            NegativeSetupTime => write!(f, "setup times must be non-negative"),
            ZeroCapacity(m) => write!(f, "{m}: capacity must be positive"),
            InitialAttribute(m) => write!(f, "{m}: initial attribute out of range"),
            Windows(m) => write!(f, "{m}: availability windows must be non-negative, sorted, disjoint and non-inverted"),
            JobAttribute(j) => write!(f, "{j}: attribute out of range"),
            ZeroSize(j) => write!(f, "{j}: size must be positive"),
            JobTimes(j) => write!(f, "{j}: need 0 <= release, 0 <= due, 1 <= min_time <= max_time"),
            Eligibility(j) => write!(f, "{j}: eligible machine set empty or unknown machine"),
            TooLarge(j) => write!(f, "{j}: size exceeds the capacity of every eligible machine"),
            NoWindow(j) => write!(f, "{j}: fits in no availability window of any eligible machine"),
        }
    }
}

/// Checks every structural rule of an instance. An empty result means the
/// instance is safe to hand to the solvers.
pub fn validate_instance(instance: &Instance) -> Vec<InstanceViolation> {
    use InstanceViolation::*;
    let a = instance.attribute_count;
    let mut out = Vec::new();
    if a == 0 {
        out.push(NoAttributes);
    }
    fn square<T>(rows: &[Vec<T>], a: usize) -> bool {
        rows.len() == a && rows.iter().all(|r| r.len() == a)
    }
    let times_ok = square(&instance.setup_times, a);
    let costs_ok = square(&instance.setup_costs, a);
    if !times_ok {
        out.push(MatrixShape { matrix: "setup time" });
    }
    if !costs_ok {
        out.push(MatrixShape { matrix: "setup cost" });
    }
    if instance.setup_times.iter().flatten().any(|&t| t < 0) {
        out.push(NegativeSetupTime);
    }

    for (m, machine) in instance.machines.iter().enumerate() {
        let id = MachineId(m);
        if machine.capacity == 0 {
            out.push(ZeroCapacity(id));
        }
        if machine.initial_attribute.0 >= a {
            out.push(InitialAttribute(id));
        }
        let windows_ok = machine.availability.iter().all(|w| w.start >= 0 && w.start <= w.end)
            && machine
                .availability
                .windows(2)
                .all(|pair| pair[0].end < pair[1].start);
        if !windows_ok {
            out.push(Windows(id));
        }
    }

    let k = instance.machines.len();
    let matrices_ok = times_ok && costs_ok && a > 0;
    for (j, job) in instance.jobs.iter().enumerate() {
        let id = JobId(j);
        let attr_ok = job.attribute.0 < a;
        if !attr_ok {
            out.push(JobAttribute(id));
        }
        if job.size == 0 {
            out.push(ZeroSize(id));
        }
        if job.release < 0 || job.due < 0 || job.min_time < 1 || job.min_time > job.max_time {
            out.push(JobTimes(id));
        }
        let elig_ok = !job.eligible.is_empty()
            && job.eligible.iter().all(|m| m.0 < k)
            && job.eligible.windows(2).all(|p| p[0] < p[1]);
        if !elig_ok {
            out.push(Eligibility(id));
            continue;
        }
        if job.size > instance.max_eligible_capacity(job) {
            out.push(TooLarge(id));
        } else if attr_ok && matrices_ok {
            let placeable = job.eligible.iter().any(|&m| {
                instance.machine(m).capacity >= job.size
                    && earliest_solo_completion(instance, id, m, min_setup_into(instance, job.attribute))
                        .is_some()
            });
            if !placeable {
                out.push(NoWindow(id));
            }
        }
    }
    out
}

/// Conditions that are legal but likely unintended.
pub fn instance_warnings(instance: &Instance) -> Vec<String> {
    instance
        .job_ids()
        .filter(|&j| instance.job(j).due < instance.job(j).release)
        .map(|j| format!("{j}: due date precedes release date"))
        .collect()
}
