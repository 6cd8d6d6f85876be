use crate::model::JobId;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("instance must contain at least one job")]
    EmptyInstance,
    #[error("machine count must be at least one")]
    NoMachines,
    #[error("due date must be nonnegative")]
    NegativeDueDate,
    #[error("job {0}: processing time must be at least one")]
    NonPositiveProcessingTime(JobId),
    #[error("job {0}: penalty rates must be nonnegative")]
    NegativePenalty(JobId),
    #[error("job id {0} appears more than once")]
    DuplicateJob(JobId),
    #[error("feasibility matrix must have one row per job with one entry per machine")]
    MalformedFeasibility,
    #[error("job {0} has no feasible machine")]
    InfeasibleJob(JobId),
    #[error("no feasible machine for this assignment step")]
    NoFeasibleMachine,
    #[error("worst-case penalty of this instance does not fit in 64-bit arithmetic")]
    PenaltyOverflow,
    #[error("sequence is empty")]
    EmptySequence,
    #[error("job ids do not form a permutation of the instance jobs")]
    NotAPermutation,
    #[error("consecutive jobs on a machine do not touch")]
    NotCompact,
    #[error("unknown job id {0}")]
    UnknownJob(JobId),
    #[error("operation requires a single-machine schedule")]
    NotSingleMachine,
    #[error("schedule starts before time zero")]
    StartsBeforeZero,
    #[error("shift amount must be nonnegative")]
    NegativeShift,
    #[error("left shift of {amount} exceeds headroom {headroom}")]
    ShiftTooLarge { amount: i64, headroom: i64 },
    #[error("job ids {0:?} appear in both the base schedule and the arrivals")]
    OverlappingJobs(Vec<JobId>),
    #[error("base schedule is not a compact single-machine schedule for its jobs")]
    InconsistentBase,
    #[error("{what} supports at most {limit}, got {actual}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("parse error at token {index}: {message}")]
    Parse { index: usize, message: String },
    #[error("empty {0} range")]
    EmptyRange(&'static str),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
