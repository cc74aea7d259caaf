use crate::error::{Error, Result};
use crate::model::{Instance, JobId};
use crate::schedule::{earliest_solo_completion, min_setup_into};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TardyBound {
    pub count: u64,
    pub jobs: Vec<JobId>,
}

/// Jobs that finish late even when run alone, as early as possible, on
/// their best eligible machine. With `with_setup` the cheapest conceivable
/// setup into the job's attribute is charged before it.
pub fn tardy_lb(instance: &Instance, with_setup: bool) -> Result<TardyBound> {
    let mut bound = TardyBound::default();
    for j in instance.job_ids() {
        let job = instance.job(j);
        let setup = if with_setup {
            min_setup_into(instance, job.attribute)
        } else {
            0
        };
        let earliest = job
            .eligible
            .iter()
            .filter_map(|&m| earliest_solo_completion(instance, j, m, setup))
            .min()
            .ok_or(Error::NoFeasiblePlacement(j))?;
        if earliest > job.due {
            bound.jobs.push(j);
        }
    }
    bound.count = bound.jobs.len() as u64;
    Ok(bound)
}
