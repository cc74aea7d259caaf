use thiserror::Error;

use crate::feasibility::Violation;
use crate::model::{JobId, MachineId};
use crate::validate::InstanceViolation;

/// Why a batch could not be placed by the schedule builder.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BatchRejection {
    #[error("batch is empty")]
    Empty,
    #[error("jobs of different attributes")]
    MixedAttributes,
    #[error("{0} is not eligible for this machine")]
    Ineligible(JobId),
    #[error("total size {size} exceeds capacity {capacity}")]
    OverCapacity { size: u64, capacity: u64 },
    #[error("processing-time ranges have no common value")]
    IncompatibleTimes,
    #[error("no availability window can host the batch")]
    NoWindow,
    #[error("{0} is unknown or appears more than once")]
    BadJob(JobId),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot schedule batch {position} on {machine}: {reason}")]
    InfeasibleBatch {
        machine: MachineId,
        position: usize,
        reason: BatchRejection,
    },
    #[error("layout does not assign every job exactly once")]
    IncompleteLayout,
    #[error("layout has {got} machines, instance has {expected}")]
    LayoutShape { expected: usize, got: usize },
    #[error("solution is infeasible ({} violations, first: {})", .0.len(), .0.first().map(|v| v.to_string()).unwrap_or_default())]
    InfeasibleSolution(Vec<Violation>),
    #[error("relative gap undefined for value 0 and non-zero bound")]
    DivisionByZero,
    #[error("{0} fits in no availability window of any eligible machine")]
    NoFeasiblePlacement(JobId),
    #[error("construction heuristic could not place {0}")]
    Unschedulable(JobId),
    #[error("no neighborhood move is applicable")]
    NoMoveAvailable,
    #[error("search budget of {nodes} nodes exhausted")]
    BudgetExceeded { nodes: u64 },
    #[error("instance has no feasible schedule")]
    Infeasible,
    #[error("instance has {jobs} jobs, the exact solver accepts at most {limit}")]
    TooManyJobs { jobs: usize, limit: usize },
    #[error("latest availability end {end} exceeds the time horizon limit {limit}")]
    HorizonExceeded { end: i64, limit: i64 },
    #[error("parse error at {location}: expected {expected}")]
    Parse { location: String, expected: String },
    #[error("invalid instance: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Validation(Vec<InstanceViolation>),
    #[error("invalid generator configuration: {0}")]
    Config(String),
    #[error("instance generation failed after {attempts} attempts: {what}")]
    GenerationRetryExceeded { attempts: u32, what: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
