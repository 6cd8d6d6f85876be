//! Extending an already-optimized single-machine schedule with newly
//! arrived jobs at the planning stage.
//!
//! The arrivals are appended compactly after the last original job and the
//! left-shift loop then continues over the breakpoints not yet consumed by
//! the base optimization. The combined optimum always lies at a shift at
//! least as large as the base shift, so continuing is equivalent to a fresh
//! optimization of the combined sequence; the extra uniform shift applied to
//! the original jobs is reported as `gamma`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, Job, JobSequence, Schedule, ScheduledJob};
use crate::single_machine::OptimizeResult;

/// Re-optimized schedule over the original and arrived jobs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynamicResult {
    pub schedule: Schedule,
    pub total: i64,
    /// Extra uniform left shift applied to every original job (never
    /// negative). The arrivals stay compact after the last original job.
    pub gamma: i64,
}

/// Appends `arrivals` to the optimized base schedule and re-optimizes by
/// pure left shift.
///
/// `instance` must contain exactly the base jobs plus the arrivals; the two
/// sets must be disjoint. The result equals a fresh sequence optimization of
/// the combined order, in value and schedule.
pub fn extend_and_reoptimize(
    instance: &Instance,
    base: &OptimizeResult,
    arrivals: &JobSequence,
) -> Result<DynamicResult> {
    if instance.machine_count != 1 {
        return Err(Error::NotSingleMachine);
    }
    if base.schedule.machines.len() != 1 {
        return Err(Error::NotSingleMachine);
    }
    let base_row = &base.schedule.machines[0];
    if base_row.is_empty() {
        return Err(Error::EmptySequence);
    }

    let index = instance.index_by_id();
    let mut used = vec![false; instance.job_count()];
    let mut overlap = Vec::new();
    for entry in base_row {
        let pos = *index.get(&entry.job).ok_or(Error::UnknownJob(entry.job))?;
        if used[pos] {
            overlap.push(entry.job);
        }
        used[pos] = true;
    }
    for &id in &arrivals.order {
        let pos = *index.get(&id).ok_or(Error::UnknownJob(id))?;
        if used[pos] {
            overlap.push(id);
        }
        used[pos] = true;
    }
    if !overlap.is_empty() {
        return Err(Error::OverlappingJobs(overlap));
    }
    if !used.iter().all(|&u| u) {
        return Err(Error::NotAPermutation);
    }

    if arrivals.is_empty() {
        return Ok(DynamicResult {
            schedule: base.schedule.clone(),
            total: base.total,
            gamma: 0,
        });
    }

    // Combined processing order and its compact initialization.
    let jobs: Vec<&Job> = base_row
        .iter()
        .map(|entry| &instance.jobs[index[&entry.job]])
        .chain(arrivals.order.iter().map(|id| &instance.jobs[index[id]]))
        .collect();
    let mut initial = Vec::with_capacity(jobs.len());
    let mut current = jobs[0].processing_time.max(instance.due_date);
    initial.push(current);
    for job in &jobs[1..] {
        current += job.processing_time;
        initial.push(current);
    }

    // The base shift relative to the shared initialization; the base must be
    // that initialization, uniformly shifted and compact.
    let base_shift = initial[0] - base_row[0].completion;
    if base_shift < 0 {
        return Err(Error::InconsistentBase);
    }
    for (entry, c0) in base_row.iter().zip(&initial) {
        if entry.completion != c0 - base_shift {
            return Err(Error::InconsistentBase);
        }
    }

    let due = instance.due_date;
    let n = jobs.len();
    let mut deviations: Vec<i64> = initial.iter().map(|c| c - base_shift - due).collect();
    let mut signs: Vec<i64> = jobs
        .iter()
        .zip(&deviations)
        .map(|(job, &dt)| if dt <= 0 { -job.early_penalty } else { job.tardy_penalty })
        .collect();
    let mut headroom = (initial[0] - base_shift) - jobs[0].processing_time;
    if headroom < 0 {
        return Err(Error::InconsistentBase);
    }

    let mut sol: i64 = deviations.iter().zip(&signs).map(|(&dt, &pl)| dt * pl).sum();
    let mut extra = 0i64;
    let mut accepted = 0i64;

    // Continue the shift loop over the breakpoints the base run has not
    // passed yet: exactly the jobs still completing after the due date.
    let resume = deviations.iter().position(|&dt| dt > 0).unwrap_or(n);
    for j in resume..n {
        let shift = headroom.min(deviations[j]);
        debug_assert!(shift >= 0);
        let mut value = 0i64;
        for (i, job) in jobs.iter().enumerate() {
            deviations[i] -= shift;
            if deviations[i] <= 0 {
                signs[i] = -job.early_penalty;
            }
            value += deviations[i] * signs[i];
        }
        headroom -= shift;
        extra += shift;
        if value < sol {
            sol = value;
            accepted = extra;
        } else {
            break;
        }
    }

    let total_shift = base_shift + accepted;
    let schedule = Schedule::single(
        jobs.iter()
            .zip(&initial)
            .map(|(job, c0)| ScheduledJob {
                job: job.id,
                completion: c0 - total_shift,
            })
            .collect(),
    );
    Ok(DynamicResult {
        schedule,
        total: sol,
        gamma: accepted,
    })
}
