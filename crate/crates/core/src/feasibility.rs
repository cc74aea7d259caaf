use std::fmt;

use crate::model::{Instance, JobId, MachineId, Solution};

/// The feasibility rules a schedule must satisfy. `Assignment` covers the
/// requirement that every job is scheduled exactly once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    AttributeHomogeneity,
    ReleaseDate,
    ProcessingTime,
    SetupTime,
    Eligibility,
    Availability,
    Capacity,
    Assignment,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::AttributeHomogeneity => "attribute homogeneity",
            Rule::ReleaseDate => "release date",
            Rule::ProcessingTime => "processing time",
            Rule::SetupTime => "setup time",
            Rule::Eligibility => "machine eligibility",
            Rule::Availability => "machine availability",
            Rule::Capacity => "machine capacity",
            Rule::Assignment => "assignment",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    /// `None` only for assignment violations of unscheduled jobs.
    pub machine: Option<MachineId>,
    pub position: Option<usize>,
    pub job: Option<JobId>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule)?;
        if let (Some(m), Some(p)) = (self.machine, self.position) {
            write!(f, " violated by batch {} on {m}", p + 1)?;
        }
        if let Some(j) = self.job {
            write!(f, " ({j})")?;
        }
        Ok(())
    }
}

/// Lists every rule violation of `solution`. Empty means feasible.
pub fn check_feasibility(instance: &Instance, solution: &Solution) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = instance.jobs.len();
    let mut count = vec![0usize; n];

    if solution.machines.len() > instance.machines.len() {
        out.push(Violation {
            rule: Rule::Eligibility,
            machine: Some(MachineId(instance.machines.len())),
            position: None,
            job: None,
        });
    }

    for (m, batches) in solution.machines.iter().enumerate().take(instance.machines.len()) {
        let machine_id = MachineId(m);
        let machine = instance.machine(machine_id);
        let mut prev_end = 0;
        let mut prev_attr = machine.initial_attribute;
        for (position, batch) in batches.iter().enumerate() {
            let mut flag = |rule, job| {
                out.push(Violation {
                    rule,
                    machine: Some(machine_id),
                    position: Some(position),
                    job,
                })
            };
            let known: Vec<JobId> = batch.jobs.iter().copied().filter(|j| j.0 < n).collect();
            for &j in &batch.jobs {
                if j.0 >= n {
                    flag(Rule::Assignment, Some(j));
                } else {
                    count[j.0] += 1;
                }
            }
            let Some(&first) = known.first() else {
                flag(Rule::Assignment, None);
                continue;
            };
            let attribute = instance.job(first).attribute;
            let mut size = 0;
            for &j in &known {
                let job = instance.job(j);
                if job.attribute != attribute {
                    flag(Rule::AttributeHomogeneity, Some(j));
                }
                if batch.start < job.release {
                    flag(Rule::ReleaseDate, Some(j));
                }
                if batch.processing_time < job.min_time || batch.processing_time > job.max_time {
                    flag(Rule::ProcessingTime, Some(j));
                }
                if !job.is_eligible(machine_id) {
                    flag(Rule::Eligibility, Some(j));
                }
                size += job.size;
            }
            if size > machine.capacity {
                flag(Rule::Capacity, None);
            }
            let setup = instance.setup_time(prev_attr, attribute);
            let setup_start = batch.start - setup;
            if setup_start < prev_end {
                flag(Rule::SetupTime, None);
            }
            let inside = machine
                .availability
                .iter()
                .any(|w| w.contains_span(setup_start, batch.end()));
            if !inside {
                flag(Rule::Availability, None);
            }
            prev_end = batch.end();
            prev_attr = attribute;
        }
    }

    for (j, &c) in count.iter().enumerate() {
        if c != 1 {
            out.push(Violation {
                rule: Rule::Assignment,
                machine: None,
                position: None,
                job: Some(JobId(j)),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_instance, example_optimal_layout};
    use crate::model::{Batch, JobId};
    use crate::schedule::build_schedule;

    fn optimal() -> (Instance, Solution) {
        let inst = example_instance();
        let sol = build_schedule(&inst, &example_optimal_layout()).unwrap();
        (inst, sol)
    }

    fn rules(v: &[Violation]) -> Vec<Rule> {
        v.iter().map(|x| x.rule).collect()
    }

    #[test]
    fn example_solution_is_feasible() {
        let (inst, sol) = optimal();
        assert!(check_feasibility(&inst, &sol).is_empty());
    }

    #[test]
    fn start_before_release() {
        let inst = example_instance();
        let mut layout = example_optimal_layout();
        // job 8 first on machine 1: starts at its release 31 with the window open since 21
        let eight = layout[0].remove(2);
        layout[0].insert(0, eight);
        let mut sol = build_schedule(&inst, &layout).unwrap();
        assert!(check_feasibility(&inst, &sol).is_empty());
        assert_eq!(sol.machines[0][0].start, 31);
        sol.machines[0][0].start -= 1;
        let v = check_feasibility(&inst, &sol);
        assert_eq!(rules(&v), vec![Rule::ReleaseDate]);
        assert_eq!(v[0].job, Some(JobId::from_number(8)));
    }

    #[test]
    fn mixed_attributes() {
        let (inst, mut sol) = optimal();
        // job 4 (attribute 1) joins the attribute-2 batch of job 8; capacity
        // still holds (13 <= 18) but its fixed 19-unit run cannot last 50
        sol.machines[0][0].jobs.retain(|&j| j != JobId::from_number(4));
        sol.machines[0][2].jobs.push(JobId::from_number(4));
        let v = check_feasibility(&inst, &sol);
        assert_eq!(rules(&v), vec![Rule::AttributeHomogeneity, Rule::ProcessingTime]);
        assert_eq!(v[0].job, Some(JobId::from_number(4)));
    }

    #[test]
    fn overlap_capacity_and_missing_jobs() {
        let (inst, mut sol) = optimal();
        sol.machines[0][3].start = sol.machines[0][2].start;
        let v = check_feasibility(&inst, &sol);
        assert!(rules(&v).contains(&Rule::SetupTime));

        let (inst, mut sol) = optimal();
        sol.machines[1].pop();
        assert_eq!(rules(&check_feasibility(&inst, &sol)), vec![Rule::Assignment]);

        let (inst, mut sol) = optimal();
        sol.machines[1][0].jobs.push(JobId::from_number(3));
        let v = check_feasibility(&inst, &sol);
        assert!(rules(&v).contains(&Rule::AttributeHomogeneity));
        assert!(rules(&v).contains(&Rule::Assignment));
    }

    #[test]
    fn window_violation() {
        let (inst, mut sol) = optimal();
        sol.machines[1].push(Batch {
            jobs: vec![],
            start: 0,
            processing_time: 1,
        });
        let v = check_feasibility(&inst, &sol);
        assert_eq!(rules(&v), vec![Rule::Assignment]);

        let (inst, mut sol) = optimal();
        let last = sol.machines[1].last_mut().unwrap();
        last.start = 250;
        assert!(rules(&check_feasibility(&inst, &sol)).contains(&Rule::Availability));
    }
}
