//! Instances shared by the benchmarks.

use osp_core::io::{generate_instance, GeneratorConfig};
use osp_core::Instance;

/// Benchmark sizes as (jobs, machines, attributes).
pub const SIZES: [(usize, usize, usize); 3] = [(50, 2, 2), (200, 3, 4), (500, 5, 5)];

pub fn instance(jobs: usize, machines: usize, attributes: usize) -> Instance {
    generate_instance(&GeneratorConfig::new(jobs, machines, attributes, 1))
        .expect("benchmark configurations generate")
}

/// A tiny instance the exact oracle solves quickly.
pub fn tiny(jobs: usize) -> Instance {
    (0..)
        .map(|seed| generate_instance(&GeneratorConfig::tiny(jobs, seed)).unwrap())
        .find(|inst| osp_core::construct(inst, &osp_core::ObjectiveWeights::for_instance(inst)).is_ok())
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_generate() {
        for (n, k, a) in SIZES {
            let inst = instance(n, k, a);
            assert_eq!((inst.jobs.len(), inst.machines.len()), (n, k));
        }
        assert_eq!(tiny(7).jobs.len(), 7);
    }
}
