//! Exact optimization of one job sequence on one machine.
//!
//! Optimal schedules are compact, so a sequence is first laid out with the
//! first job completing at `max(P_1, D)` and every later job following
//! without idle time. From there the only useful move is a uniform left
//! shift. The linear variant walks the shift breakpoints one by one
//! (completion of the next job hits the due date, or the headroom runs out)
//! and stops at the first non-improvement; the value trend over breakpoints
//! is unimodal, so an exponential search over the breakpoint index finds the
//! same total with O(log n) penalty evaluations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, Job, JobSequence, Schedule, ScheduledJob};

/// Outcome of optimizing one sequence on one machine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimizeResult {
    /// The accepted schedule (the least-shifted one on value ties).
    pub schedule: Schedule,
    /// Its total penalty.
    pub total: i64,
    /// Every evaluated total in evaluation order. The first entry is the
    /// penalty of the compact initialization; for the linear variant the
    /// last entry is the first rejected value (when the loop stopped early).
    pub trace: Vec<i64>,
    /// Uniform left shift of the accepted schedule relative to the
    /// initialization. Never exceeds the initial headroom.
    pub total_shift: i64,
    /// Number of full penalty evaluations performed.
    pub evaluations: usize,
}

/// Lays the sequence out compactly with no early job: the first job
/// completes at `max(P_1, D)`, each following job right after its
/// predecessor.
pub fn initialize_compact(instance: &Instance, sequence: &JobSequence) -> Result<Schedule> {
    let jobs = resolve(instance, sequence)?;
    Ok(build_schedule(&jobs, &initial_completions(instance, &jobs), 0))
}

/// Reduces every completion time in the schedule by `amount`.
///
/// Fails if any machine's first job would start before time zero.
pub fn apply_left_shift(instance: &Instance, schedule: &Schedule, amount: i64) -> Result<Schedule> {
    if amount < 0 {
        return Err(Error::NegativeShift);
    }
    for row in &schedule.machines {
        if let Some(first) = row.first() {
            let headroom = first.completion - instance.job(first.job)?.processing_time;
            if amount > headroom {
                return Err(Error::ShiftTooLarge { amount, headroom });
            }
        }
    }
    Ok(Schedule {
        machines: schedule
            .machines
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| ScheduledJob {
                        job: entry.job,
                        completion: entry.completion - amount,
                    })
                    .collect()
            })
            .collect(),
    })
}

/// Breakpoint-by-breakpoint left-shift optimization of a sequence.
///
/// Starting from the compact initialization, iteration `j` shifts every job
/// left by `min(ES, DT_j)`; the new total is accepted only if it strictly
/// improves, and the loop stops at the first non-improvement. The deviation
/// and sign vectors are updated incrementally; each iteration costs O(n).
pub fn optimize_sequence_linear(
    instance: &Instance,
    sequence: &JobSequence,
) -> Result<OptimizeResult> {
    let jobs = resolve(instance, sequence)?;
    let n = jobs.len();
    let initial = initial_completions(instance, &jobs);

    let mut deviations: Vec<i64> = initial.iter().map(|c| c - instance.due_date).collect();
    let mut signs: Vec<i64> = jobs
        .iter()
        .zip(&deviations)
        .map(|(job, &dt)| if dt <= 0 { -job.early_penalty } else { job.tardy_penalty })
        .collect();
    let mut headroom = initial[0] - jobs[0].processing_time;

    let mut sol: i64 = deviations.iter().zip(&signs).map(|(&dt, &pl)| dt * pl).sum();
    let mut trace = vec![sol];
    let mut evaluations = 1;
    let mut cumulative = 0i64;
    let mut accepted = 0i64;

    for j in 1..n {
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
        cumulative += shift;
        evaluations += 1;
        trace.push(value);
        if value < sol {
            sol = value;
            accepted = cumulative;
        } else {
            break;
        }
    }

    Ok(OptimizeResult {
        schedule: build_schedule(&jobs, &initial, accepted),
        total: sol,
        trace,
        total_shift: accepted,
        evaluations,
    })
}

/// Exponential-search variant of [`optimize_sequence_linear`].
///
/// The cumulative shift reached by the linear loop at breakpoint `j` is
/// `min(DT_j, ES)` of the initialization, so the totals can be probed at any
/// breakpoint directly. The totals fall strictly until the optimum and never
/// fall afterwards (flat once the headroom is exhausted), so doubling the
/// probe index while the value still falls and then binary-searching the
/// bracket finds the same total as the linear scan with at most
/// `6 * (floor(log2 n) + 2)` penalty evaluations.
pub fn optimize_sequence_logsearch(
    instance: &Instance,
    sequence: &JobSequence,
) -> Result<OptimizeResult> {
    let jobs = resolve(instance, sequence)?;
    let n = jobs.len();
    let initial = initial_completions(instance, &jobs);
    let headroom = initial[0] - jobs[0].processing_time;

    let mut probe = BreakpointProbe {
        jobs: &jobs,
        initial: &initial,
        due_date: instance.due_date,
        headroom,
        memo: vec![None; n + 1],
        trace: Vec::new(),
        evaluations: 0,
    };
    probe.value_at(1);

    let best = if n == 1 {
        1
    } else {
        // Smallest j with value(j + 1) >= value(j), if any; the totals fall
        // strictly before it and never improve after it.
        let mut last_falling = 0usize;
        let mut step = 1usize;
        let first_stalled = loop {
            let j = step.min(n - 1);
            if probe.stalled(j) {
                break Some(j);
            }
            last_falling = j;
            if j == n - 1 {
                break None;
            }
            step *= 2;
        };
        match first_stalled {
            None => n,
            Some(mut hi) => {
                let mut lo = last_falling;
                while hi - lo > 1 {
                    let mid = lo + (hi - lo) / 2;
                    if probe.stalled(mid) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                hi
            }
        }
    };

    let total = probe.value_at(best);
    let total_shift = headroom.min(initial[best - 1] - instance.due_date);
    Ok(OptimizeResult {
        schedule: build_schedule(&jobs, &initial, total_shift),
        total,
        trace: probe.trace,
        total_shift,
        evaluations: probe.evaluations,
    })
}

/// Memoized penalty probe over breakpoint indices of one initialization.
struct BreakpointProbe<'a> {
    jobs: &'a [&'a Job],
    initial: &'a [i64],
    due_date: i64,
    headroom: i64,
    memo: Vec<Option<i64>>,
    trace: Vec<i64>,
    evaluations: usize,
}

impl BreakpointProbe<'_> {
    /// Total penalty after shifting the initialization to breakpoint `j`
    /// (1-based; breakpoint 1 is the unshifted layout).
    fn value_at(&mut self, j: usize) -> i64 {
        if let Some(v) = self.memo[j] {
            return v;
        }
        let shift = self.headroom.min(self.initial[j - 1] - self.due_date);
        let v: i64 = self
            .jobs
            .iter()
            .zip(self.initial)
            .map(|(job, c0)| {
                let dt = c0 - shift - self.due_date;
                if dt <= 0 {
                    -job.early_penalty * dt
                } else {
                    job.tardy_penalty * dt
                }
            })
            .sum();
        self.memo[j] = Some(v);
        self.trace.push(v);
        self.evaluations += 1;
        v
    }

    fn stalled(&mut self, j: usize) -> bool {
        self.value_at(j + 1) >= self.value_at(j)
    }
}

/// Resolves a validated sequence to job references in processing order.
fn resolve<'a>(instance: &'a Instance, sequence: &JobSequence) -> Result<Vec<&'a Job>> {
    if sequence.is_empty() {
        return Err(Error::EmptySequence);
    }
    if instance.machine_count != 1 {
        return Err(Error::NotSingleMachine);
    }
    sequence.validate(instance)?;
    let index = instance.index_by_id();
    Ok(sequence
        .order
        .iter()
        .map(|id| &instance.jobs[index[id]])
        .collect())
}

fn initial_completions(instance: &Instance, jobs: &[&Job]) -> Vec<i64> {
    let mut completions = Vec::with_capacity(jobs.len());
    let mut current = jobs[0].processing_time.max(instance.due_date);
    completions.push(current);
    for job in &jobs[1..] {
        current += job.processing_time;
        completions.push(current);
    }
    completions
}

fn build_schedule(jobs: &[&Job], initial: &[i64], shift: i64) -> Schedule {
    Schedule::single(
        jobs.iter()
            .zip(initial)
            .map(|(job, c0)| ScheduledJob {
                job: job.id,
                completion: c0 - shift,
            })
            .collect(),
    )
}
