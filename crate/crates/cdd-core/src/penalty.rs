//! The two equivalent penalty evaluators.
//!
//! The direct form sums `alpha_i * E_i + beta_i * T_i` over all jobs. The
//! sign form works on the deviation vector `DT_i = C_i - D` and the signed
//! rate vector `PL_i` (`-alpha_i` while a job is early or on time, `beta_i`
//! once it is tardy): the total is `sum DT_i * PL_i`. Both must agree on
//! every schedule; the solvers use the sign form internally and the tests
//! hold the two against each other.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, JobId, Schedule};

/// Earliness/tardiness of a single job.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobPenalty {
    pub job: JobId,
    pub earliness: i64,
    pub tardiness: i64,
}

/// Per-job deviations plus the weighted total. At most one of `earliness`
/// and `tardiness` is nonzero for each job.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PenaltyBreakdown {
    pub per_job: Vec<JobPenalty>,
    pub total: i64,
}

/// Evaluates the weighted earliness/tardiness total of a schedule.
///
/// The schedule must cover exactly the instance's jobs; a job unknown to the
/// instance or a duplicated/missing job is a structural error.
pub fn evaluate_penalty(instance: &Instance, schedule: &Schedule) -> Result<PenaltyBreakdown> {
    let index = instance.index_by_id();
    let mut seen = vec![false; instance.job_count()];
    let mut per_job = Vec::with_capacity(instance.job_count());
    let mut total = 0i64;
    for entry in schedule.iter_jobs() {
        let pos = *index.get(&entry.job).ok_or(Error::UnknownJob(entry.job))?;
        if seen[pos] {
            return Err(Error::NotAPermutation);
        }
        seen[pos] = true;
        let job = &instance.jobs[pos];
        let earliness = (instance.due_date - entry.completion).max(0);
        let tardiness = (entry.completion - instance.due_date).max(0);
        total += job.early_penalty * earliness + job.tardy_penalty * tardiness;
        per_job.push(JobPenalty {
            job: entry.job,
            earliness,
            tardiness,
        });
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::NotAPermutation);
    }
    Ok(PenaltyBreakdown { per_job, total })
}

/// Working state of the left-shift loop over a single-machine schedule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftState {
    /// `DT_i = C_i - D` in schedule order; strictly increasing for a compact
    /// schedule.
    pub deviations: Vec<i64>,
    /// `PL_i`: `-alpha_i` while `DT_i <= 0`, `beta_i` once `DT_i > 0`.
    pub signs: Vec<i64>,
    /// `ES = C_1 - P_1`, the largest further left shift before the first job
    /// would start before time zero.
    pub headroom: i64,
}

/// Computes deviations, signed rates and headroom for a single-machine
/// schedule.
pub fn compute_shift_state(instance: &Instance, schedule: &Schedule) -> Result<ShiftState> {
    if schedule.machines.len() != 1 {
        return Err(Error::NotSingleMachine);
    }
    let row = &schedule.machines[0];
    if row.is_empty() {
        return Err(Error::EmptySequence);
    }
    let index = instance.index_by_id();
    let mut deviations = Vec::with_capacity(row.len());
    let mut signs = Vec::with_capacity(row.len());
    for entry in row {
        let pos = *index.get(&entry.job).ok_or(Error::UnknownJob(entry.job))?;
        let job = &instance.jobs[pos];
        let deviation = entry.completion - instance.due_date;
        deviations.push(deviation);
        // On-time jobs take the early branch; the product is zero either way.
        signs.push(if deviation <= 0 {
            -job.early_penalty
        } else {
            job.tardy_penalty
        });
    }
    let first = &row[0];
    let headroom = first.completion - instance.job(first.job)?.processing_time;
    if headroom < 0 {
        return Err(Error::StartsBeforeZero);
    }
    Ok(ShiftState {
        deviations,
        signs,
        headroom,
    })
}

/// The sign-form total `sum DT_i * PL_i`. Equals [`evaluate_penalty`] on the
/// schedule the state was computed from.
pub fn penalty_via_signs(state: &ShiftState) -> i64 {
    state
        .deviations
        .iter()
        .zip(&state.signs)
        .map(|(&dt, &pl)| dt * pl)
        .sum()
}
