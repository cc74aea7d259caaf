//! Oven scheduling: lower bounds, a dispatching-rule heuristic, simulated
//! annealing and an exhaustive oracle for small instances.
//!
//! Jobs are grouped into attribute-homogeneous batches that run on
//! capacity-limited ovens inside availability windows. The objective mixes
//! cumulative oven runtime, the number of tardy jobs and setup costs.

pub mod bounds;
pub mod anneal;
mod cost;
mod error;
mod feasibility;
pub mod greedy;
pub mod io;
pub mod fixtures;
mod model;
pub mod oracle;
mod schedule;
mod validate;

pub use anneal::{run_annealing, AnnealOutcome, AnnealParams, AnnealTrace, StopReason};
pub use bounds::{objective_lb, BoundReport};
pub use cost::{evaluate, evaluate_unchecked, relative_gap};
pub use error::{BatchRejection, Error, Result};
pub use feasibility::{check_feasibility, Rule, Violation};
pub use greedy::construct;
pub use model::*;
pub use oracle::{exact_solve, min_clique_cover, OracleLimits, OracleOutcome};
pub use schedule::{
    build_schedule, earliest_solo_completion, min_setup_into, schedule_machine, MachineCursor,
    Placement,
};
pub use validate::{instance_warnings, validate_instance, InstanceViolation};
