//! Scheduling jobs against a common due date on one or more machines.
//!
//! Every job carries a processing time and asymmetric per-unit penalty rates
//! for finishing early or late relative to a shared due date. This crate
//! provides:
//!
//! - exact optimization of a *given* job sequence on a single machine, in
//!   linear-scan and exponential-search variants ([`single_machine`]),
//! - greedy assignment of a sequence onto identical (or restricted) parallel
//!   machines followed by independent per-machine optimization ([`parallel`]),
//! - re-optimization after new jobs arrive at the planning stage ([`dynamic`]),
//! - a seeded ensemble simulated-annealing search over sequences ([`anneal`]),
//! - OR-library benchmark ingestion and random instance generation
//!   ([`instances`]),
//! - brute-force reference optimizers used by the test suites ([`oracle`]),
//! - plain-text and SVG Gantt rendering ([`gantt`]).
//!
//! All times and penalties are integers; totals are accumulated in `i64` and
//! instance construction rejects data whose worst-case penalty could overflow.
//!
//! ```
//! use cdd_core::{Instance, Job, JobSequence};
//! use cdd_core::single_machine::optimize_sequence_logsearch;
//!
//! let instance = Instance::new(
//!     vec![
//!         Job::new(1, 6, 7, 9),
//!         Job::new(2, 5, 9, 5),
//!         Job::new(3, 2, 6, 4),
//!         Job::new(4, 4, 9, 3),
//!         Job::new(5, 4, 3, 2),
//!     ],
//!     16, // common due date
//!     1,  // machines
//! )?;
//! let result = optimize_sequence_logsearch(&instance, &JobSequence::new(vec![1, 2, 3, 4, 5]))?;
//! assert_eq!(result.total, 81);
//! assert_eq!(result.total_shift, 5);
//! # Ok::<(), cdd_core::Error>(())
//! ```

pub mod anneal;
pub mod dynamic;
mod error;
pub mod gantt;
pub mod instances;
mod model;
pub mod oracle;
pub mod parallel;
mod penalty;
pub mod single_machine;

pub use error::{Error, Result};
pub use model::{Instance, Job, JobId, JobSequence, Schedule, ScheduledJob};
pub use penalty::{
    compute_shift_state, evaluate_penalty, penalty_via_signs, JobPenalty, PenaltyBreakdown,
    ShiftState,
};
