use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Attr, Batch, Instance, Job, JobId, Machine, MachineId, Solution, Time, Window};
use crate::validate::validate_instance;

pub const INSTANCE_FORMAT: &str = "osp-instance";
pub const SOLUTION_FORMAT: &str = "osp-solution";
pub const FORMAT_VERSION: i64 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    format: String,
    version: i64,
    attributes: i64,
    setup_times: Vec<Vec<i64>>,
    setup_costs: Vec<Vec<u64>>,
    #[serde(default)]
    machine: Vec<MachineDoc>,
    #[serde(default)]
    job: Vec<JobDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MachineDoc {
    capacity: i64,
    initial_attribute: i64,
    availability: Vec<[i64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JobDoc {
    attribute: i64,
    size: i64,
    release: i64,
    due: i64,
    min_time: i64,
    max_time: i64,
    eligible: Vec<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionDoc {
    format: String,
    version: i64,
    #[serde(default)]
    batch: Vec<BatchDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BatchDoc {
    machine: i64,
    jobs: Vec<i64>,
    start: i64,
    processing_time: i64,
}

/// One-based number to index; out-of-range numbers map to an index no
/// instance has, so validation reports them.
fn index(number: i64) -> usize {
    if number >= 1 {
        (number - 1) as usize
    } else {
        usize::MAX
    }
}

fn number(index: usize) -> i64 {
    index as i64 + 1
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

pub(crate) fn decode<T: DeserializeOwned>(text: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| {
        let location = match e.span() {
            Some(span) => {
                let (line, col) = line_col(text, span.start);
                format!("line {line}, column {col}")
            }
            None => "document".to_string(),
        };
        Error::Parse {
            location,
            expected: e.message().trim().to_string(),
        }
    })
}

fn check_header(format: &str, version: i64, expected: &str) -> Result<()> {
    if format != expected {
        return Err(Error::Parse {
            location: "key `format`".to_string(),
            expected: format!("\"{expected}\", found \"{format}\""),
        });
    }
    if version != FORMAT_VERSION {
        return Err(Error::Parse {
            location: "key `version`".to_string(),
            expected: format!("{FORMAT_VERSION}, found {version}"),
        });
    }
    Ok(())
}

/// Reads an instance document and validates it.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: InstanceDoc = decode(text)?;
    check_header(&doc.format, doc.version, INSTANCE_FORMAT)?;
    let machines = doc
        .machine
        .iter()
        .map(|m| Machine {
            capacity: u64::try_from(m.capacity).unwrap_or(0),
            initial_attribute: Attr(index(m.initial_attribute)),
            availability: m.availability.iter().map(|&[s, e]| Window::new(s, e)).collect(),
        })
        .collect();
    let jobs = doc
        .job
        .iter()
        .map(|j| Job {
            attribute: Attr(index(j.attribute)),
            size: u64::try_from(j.size).unwrap_or(0),
            release: j.release,
            due: j.due,
            min_time: j.min_time,
            max_time: j.max_time,
            eligible: j.eligible.iter().map(|&m| MachineId(index(m))).collect(),
        })
        .collect();
    let instance = Instance {
        machines,
        jobs,
        attribute_count: usize::try_from(doc.attributes).unwrap_or(0),
        setup_times: doc.setup_times,
        setup_costs: doc.setup_costs,
    };
    let violations = validate_instance(&instance);
    if violations.is_empty() {
        Ok(instance)
    } else {
        Err(Error::Validation(violations))
    }
}

pub fn write_instance(instance: &Instance) -> String {
    let doc = InstanceDoc {
        format: INSTANCE_FORMAT.to_string(),
        version: FORMAT_VERSION,
        attributes: instance.attribute_count as i64,
        setup_times: instance.setup_times.clone(),
        setup_costs: instance.setup_costs.clone(),
        machine: instance
            .machines
            .iter()
            .map(|m| MachineDoc {
                capacity: m.capacity as i64,
                initial_attribute: number(m.initial_attribute.0),
                availability: m.availability.iter().map(|w| [w.start, w.end]).collect(),
            })
            .collect(),
        job: instance
            .jobs
            .iter()
            .map(|j| JobDoc {
                attribute: number(j.attribute.0),
                size: j.size as i64,
                release: j.release,
                due: j.due,
                min_time: j.min_time,
                max_time: j.max_time,
                eligible: j.eligible.iter().map(|m| number(m.0)).collect(),
            })
            .collect(),
    };
    toml::to_string(&doc).expect("instance documents always serialize")
}

/// Reads a solution document. Batches of a machine appear in processing
/// order; the result has as many machines as the largest machine number.
pub fn parse_solution(text: &str) -> Result<Solution> {
    let doc: SolutionDoc = decode(text)?;
    check_header(&doc.format, doc.version, SOLUTION_FORMAT)?;
    let mut solution = Solution::default();
    for (i, b) in doc.batch.iter().enumerate() {
        let bad = |what: &str| Error::Parse {
            location: format!("batch {}", i + 1),
            expected: what.to_string(),
        };
        if b.machine < 1 {
            return Err(bad("machine number >= 1"));
        }
        if b.jobs.iter().any(|&j| j < 1) {
            return Err(bad("job numbers >= 1"));
        }
        let m = index(b.machine);
        if solution.machines.len() <= m {
            solution.machines.resize(m + 1, Vec::new());
        }
        solution.machines[m].push(Batch {
            jobs: b.jobs.iter().map(|&j| JobId(index(j))).collect(),
            start: b.start as Time,
            processing_time: b.processing_time as Time,
        });
    }
    Ok(solution)
}

pub fn write_solution(solution: &Solution) -> String {
    let doc = SolutionDoc {
        format: SOLUTION_FORMAT.to_string(),
        version: FORMAT_VERSION,
        batch: solution
            .machines
            .iter()
            .enumerate()
            .flat_map(|(m, batches)| {
                batches.iter().map(move |b| BatchDoc {
                    machine: number(m),
                    jobs: b.jobs.iter().map(|j| number(j.0)).collect(),
                    start: b.start,
                    processing_time: b.processing_time,
                })
            })
            .collect(),
    };
    toml::to_string(&doc).expect("solution documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_instance, example_optimal_layout};
    use crate::schedule::build_schedule;
    use crate::validate::InstanceViolation;

    const SHIPPED: &str = include_str!("../../../../fixtures/appendix-a1.toml");

    #[test]
    fn shipped_fixture_matches() {
        let inst = parse_instance(SHIPPED).unwrap();
        assert_eq!(inst, example_instance());
        assert_eq!((inst.jobs.len(), inst.machines.len(), inst.attribute_count), (10, 2, 2));
    }

    #[test]
    fn round_trip() {
        let inst = example_instance();
        let text = write_instance(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst);
        assert_eq!(write_instance(&parse_instance(&text).unwrap()), text);

        let sol = build_schedule(&inst, &example_optimal_layout()).unwrap();
        let text = write_solution(&sol);
        assert_eq!(parse_solution(&text).unwrap(), sol);
    }

    #[test]
    fn empty_document() {
        assert!(matches!(parse_instance(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_solution(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn negative_capacity() {
        let text = SHIPPED.replacen("capacity = 18", "capacity = -1", 1);
        match parse_instance(&text) {
            Err(Error::Validation(v)) => {
                assert_eq!(v[0], InstanceViolation::ZeroCapacity(MachineId(0)))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn error_location() {
        let text = SHIPPED.replacen("size = 18", "size = \"big\"", 1);
        let Err(Error::Parse { location, .. }) = parse_instance(&text) else {
            panic!()
        };
        let line = SHIPPED.lines().position(|l| l.contains("size = 18")).unwrap() + 1;
        assert!(location.starts_with(&format!("line {line},")), "{location}");
    }

    #[test]
    fn wrong_header() {
        let text = SHIPPED.replacen("version = 1", "version = 2", 1);
        assert!(matches!(parse_instance(&text), Err(Error::Parse { location, .. }) if location.contains("version")));
        let text = SHIPPED.replacen("osp-instance", "osp-solution", 1);
        assert!(parse_instance(&text).is_err());
    }

    #[test]
    fn unknown_job_number() {
        let text = SHIPPED.replacen("eligible = [1, 2]", "eligible = [0]", 1);
        assert!(matches!(parse_instance(&text), Err(Error::Validation(_))));
    }
}
