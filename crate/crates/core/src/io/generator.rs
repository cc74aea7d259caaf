use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Attr, Instance, Job, Machine, MachineId, Time, Window};
use crate::validate::validate_instance;

/// Inclusive integer range.
pub type Range = [i64; 2];

/// Parameters of the random instance generator. Every range is inclusive.
/// Generation uses integer arithmetic only, so a seed yields the same
/// instance on every platform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorConfig {
    pub n_jobs: usize,
    pub n_machines: usize,
    pub n_attributes: usize,
    pub seed: u64,
    pub size: Range,
    pub capacity: Range,
    pub min_time: Range,
    /// Added to `min_time` to get `max_time`.
    pub time_slack: Range,
    /// Releases are drawn from `[0, release_horizon]`; 0 picks a horizon
    /// proportional to the jobs per machine.
    pub release_horizon: i64,
    /// Added to release plus `min_time` to get the due date.
    pub due_slack: Range,
    pub windows: Range,
    pub window_length: Range,
    pub window_gap: Range,
    pub setup_time: Range,
    pub setup_cost: Range,
    /// Probability that a job may run on a given machine.
    pub eligibility: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            n_jobs: 10,
            n_machines: 2,
            n_attributes: 2,
            seed: 0,
            size: [1, 20],
            capacity: [20, 50],
            min_time: [5, 60],
            time_slack: [0, 60],
            release_horizon: 0,
            due_slack: [0, 120],
            windows: [1, 3],
            window_length: [60, 240],
            window_gap: [0, 40],
            setup_time: [0, 20],
            setup_cost: [0, 20],
            eligibility: 0.7,
        }
    }
}

impl GeneratorConfig {
    pub fn new(n_jobs: usize, n_machines: usize, n_attributes: usize, seed: u64) -> Self {
        Self {
            n_jobs,
            n_machines,
            n_attributes,
            seed,
            ..Self::default()
        }
    }

    /// Few, tightly packed jobs with short windows, sized for exhaustive
    /// search.
    pub fn tiny(n_jobs: usize, seed: u64) -> Self {
        Self {
            n_jobs,
            n_machines: 2,
            n_attributes: 2,
            seed,
            size: [1, 10],
            capacity: [10, 20],
            min_time: [5, 30],
            time_slack: [0, 30],
            release_horizon: 0,
            due_slack: [0, 40],
            windows: [1, 2],
            window_length: [40, 120],
            window_gap: [0, 20],
            setup_time: [0, 10],
            setup_cost: [0, 10],
            eligibility: 0.7,
        }
    }

    pub fn check(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Config(what.to_string()));
        if self.n_jobs == 0 || self.n_machines == 0 || self.n_attributes == 0 {
            return bad("n_jobs, n_machines and n_attributes must be positive");
        }
        if self.n_machines > 64 {
            return bad("at most 64 machines");
        }
        let ranges = [
            ("size", self.size, 1),
            ("capacity", self.capacity, 1),
            ("min_time", self.min_time, 1),
            ("time_slack", self.time_slack, 0),
            ("due_slack", self.due_slack, 0),
            ("windows", self.windows, 1),
            ("window_length", self.window_length, 1),
            ("window_gap", self.window_gap, 0),
            ("setup_time", self.setup_time, 0),
            ("setup_cost", self.setup_cost, 0),
        ];
        for (name, [lo, hi], floor) in ranges {
            if lo < floor || lo > hi {
                return Err(Error::Config(format!(
                    "{name} range [{lo}, {hi}] must be non-empty with lower end >= {floor}"
                )));
            }
        }
        if self.release_horizon < 0 {
            return bad("release_horizon must be non-negative");
        }
        if !(self.eligibility > 0.0 && self.eligibility <= 1.0) {
            return bad("eligibility must lie in (0, 1]");
        }
        Ok(())
    }

    fn eligibility_ppm(&self) -> u32 {
        (self.eligibility * 1e6).round().clamp(1.0, 1e6) as u32
    }
}

/// Reads a generator configuration; omitted keys take their defaults.
pub fn parse_generator_config(text: &str) -> Result<GeneratorConfig> {
    let config: GeneratorConfig = super::format::decode(text)?;
    config.check()?;
    Ok(config)
}

pub fn write_generator_config(config: &GeneratorConfig) -> String {
    toml::to_string(config).expect("generator configurations always serialize")
}

const MAX_ATTEMPTS: u32 = 1000;

fn draw(rng: &mut ChaCha8Rng, [lo, hi]: Range) -> i64 {
    rng.gen_range(lo..=hi)
}

/// Generates a random valid instance. The last availability window of every
/// machine is stretched far enough that all jobs fit one after another,
/// so every job has room on each of its machines.
pub fn generate_instance(config: &GeneratorConfig) -> Result<Instance> {
    config.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (n, k, a) = (config.n_jobs, config.n_machines, config.n_attributes);

    let matrix = |rng: &mut ChaCha8Rng, range| -> Vec<Vec<i64>> {
        (0..a).map(|_| (0..a).map(|_| draw(rng, range)).collect()).collect()
    };
    let setup_times = matrix(&mut rng, config.setup_time);
    let setup_costs = matrix(&mut rng, config.setup_cost)
        .into_iter()
        .map(|row| row.into_iter().map(|c| c as u64).collect())
        .collect();

    let mut machines: Vec<Machine> = (0..k)
        .map(|_| {
            let capacity = draw(&mut rng, config.capacity) as u64;
            let initial_attribute = Attr(rng.gen_range(0..a));
            let count = draw(&mut rng, config.windows);
            let mut at = draw(&mut rng, config.window_gap);
            let availability = (0..count)
                .map(|i| {
                    if i > 0 {
                        // keep windows strictly apart
                        at += draw(&mut rng, config.window_gap) + 1;
                    }
                    let w = Window::new(at, at + draw(&mut rng, config.window_length));
                    at = w.end;
                    w
                })
                .collect();
            Machine {
                capacity,
                initial_attribute,
                availability,
            }
        })
        .collect();

    let largest = machines.iter().map(|m| m.capacity).max().unwrap_or(0);
    let release_horizon = if config.release_horizon > 0 {
        config.release_horizon
    } else {
        let mean_time = (config.min_time[0] + config.min_time[1]) / 2;
        (n as i64 * mean_time / k as i64).max(1)
    };
    let threshold = config.eligibility_ppm();
    let mut jobs = Vec::with_capacity(n);
    for _ in 0..n {
        let attribute = Attr(rng.gen_range(0..a));
        let mut attempts = 0;
        let size = loop {
            let s = draw(&mut rng, config.size) as u64;
            if s <= largest {
                break s;
            }
            attempts += 1;
            if attempts >= MAX_ATTEMPTS {
                return Err(Error::GenerationRetryExceeded {
                    attempts,
                    what: "job size above every machine capacity".to_string(),
                });
            }
        };
        let min_time = draw(&mut rng, config.min_time);
        let max_time = min_time + draw(&mut rng, config.time_slack);
        let release = rng.gen_range(0..=release_horizon);
        let due = release + min_time + draw(&mut rng, config.due_slack);
        let mut attempts = 0;
        let eligible = loop {
            let set: Vec<MachineId> = (0..k)
                .filter(|_| rng.gen_range(0..1_000_000) < threshold)
                .map(MachineId)
                .collect();
            if set.iter().any(|m| machines[m.0].capacity >= size) {
                break set;
            }
            attempts += 1;
            if attempts >= MAX_ATTEMPTS {
                return Err(Error::GenerationRetryExceeded {
                    attempts,
                    what: "no eligible machine set with enough capacity".to_string(),
                });
            }
        };
        jobs.push(Job {
            attribute,
            size,
            release,
            due,
            min_time,
            max_time,
            eligible,
        });
    }

    let max_setup = setup_times.iter().flatten().copied().max().unwrap_or(0);
    let latest_release = jobs.iter().map(|j| j.release).max().unwrap_or(0);
    let horizon: Time =
        latest_release + jobs.iter().map(|j| j.min_time + max_setup).sum::<Time>() + 1;
    for m in &mut machines {
        let last = m.availability.last_mut().expect("at least one window");
        last.end = last.end.max(horizon);
    }

    let instance = Instance {
        machines,
        jobs,
        attribute_count: a,
        setup_times,
        setup_costs,
    };
    let violations = validate_instance(&instance);
    if violations.is_empty() {
        Ok(instance)
    } else {
        Err(Error::Validation(violations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::objective_lb;
    use crate::greedy::construct;
    use crate::model::ObjectiveWeights;

    #[test]
    fn same_seed_same_instance() {
        let c = GeneratorConfig::new(10, 2, 2, 1);
        assert_eq!(generate_instance(&c).unwrap(), generate_instance(&c).unwrap());
        let other = GeneratorConfig::new(10, 2, 2, 2);
        assert_ne!(generate_instance(&c).unwrap(), generate_instance(&other).unwrap());
    }

    #[test]
    fn pipeline_smoke() {
        for seed in 0..20 {
            let inst = generate_instance(&GeneratorConfig::new(25, 3, 3, seed)).unwrap();
            let w = ObjectiveWeights::for_instance(&inst);
            objective_lb(&inst, &w).unwrap();
            construct(&inst, &w).unwrap();
        }
    }

    #[test]
    fn impossible_sizes() {
        let c = GeneratorConfig {
            size: [60, 70],
            capacity: [10, 20],
            ..GeneratorConfig::new(5, 2, 2, 0)
        };
        assert!(matches!(generate_instance(&c), Err(Error::GenerationRetryExceeded { .. })));
    }

    #[test]
    fn bad_config() {
        let c = GeneratorConfig {
            eligibility: 0.0,
            ..GeneratorConfig::default()
        };
        assert!(matches!(generate_instance(&c), Err(Error::Config(_))));
        let c = GeneratorConfig {
            size: [5, 1],
            ..GeneratorConfig::default()
        };
        assert!(matches!(generate_instance(&c), Err(Error::Config(_))));
    }

    #[test]
    fn config_from_toml_uses_defaults() {
        let c = parse_generator_config("n_jobs = 50\nseed = 9").unwrap();
        assert_eq!(c, GeneratorConfig { n_jobs: 50, seed: 9, ..GeneratorConfig::default() });
        assert_eq!(parse_generator_config(&write_generator_config(&c)).unwrap(), c);
        assert!(matches!(parse_generator_config("jobs = 5"), Err(Error::Parse { .. })));
    }
}
