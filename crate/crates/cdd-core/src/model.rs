//! Domain types shared by every solver: jobs, instances, sequences and
//! schedules.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifier of a job, unique within its instance.
pub type JobId = u32;

/// One task: a processing time plus per-unit penalty rates for completing
/// early or late relative to the common due date.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Job {
    pub id: JobId,
    /// Time units the job occupies the machine. Always at least one.
    pub processing_time: i64,
    /// Penalty per unit of earliness.
    pub early_penalty: i64,
    /// Penalty per unit of tardiness.
    pub tardy_penalty: i64,
}

impl Job {
    pub fn new(id: JobId, processing_time: i64, early_penalty: i64, tardy_penalty: i64) -> Job {
        Job {
            id,
            processing_time,
            early_penalty,
            tardy_penalty,
        }
    }
}

/// A problem instance: the job set, the common due date and the machine
/// count, with an optional job-on-machine feasibility restriction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub jobs: Vec<Job>,
    pub due_date: i64,
    pub machine_count: usize,
    /// `feasibility[i][j]` says whether job `i` (by position in `jobs`) may
    /// run on machine `j`. `None` means every machine accepts every job.
    pub feasibility: Option<Vec<Vec<bool>>>,
}

impl Instance {
    /// Builds an instance with identical machines, validating every invariant
    /// including the 64-bit penalty bound.
    pub fn new(jobs: Vec<Job>, due_date: i64, machine_count: usize) -> Result<Instance> {
        Instance::build(jobs, due_date, machine_count, None)
    }

    /// As [`Instance::new`] but with a job-on-machine feasibility matrix.
    pub fn with_feasibility(
        jobs: Vec<Job>,
        due_date: i64,
        machine_count: usize,
        feasibility: Vec<Vec<bool>>,
    ) -> Result<Instance> {
        Instance::build(jobs, due_date, machine_count, Some(feasibility))
    }

    fn build(
        jobs: Vec<Job>,
        due_date: i64,
        machine_count: usize,
        feasibility: Option<Vec<Vec<bool>>>,
    ) -> Result<Instance> {
        if jobs.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if machine_count == 0 {
            return Err(Error::NoMachines);
        }
        if due_date < 0 {
            return Err(Error::NegativeDueDate);
        }
        let mut seen = HashMap::new();
        for job in &jobs {
            if job.processing_time < 1 {
                return Err(Error::NonPositiveProcessingTime(job.id));
            }
            if job.early_penalty < 0 || job.tardy_penalty < 0 {
                return Err(Error::NegativePenalty(job.id));
            }
            if seen.insert(job.id, ()).is_some() {
                return Err(Error::DuplicateJob(job.id));
            }
        }
        if let Some(matrix) = &feasibility {
            if matrix.len() != jobs.len() {
                return Err(Error::MalformedFeasibility);
            }
            for (job, row) in jobs.iter().zip(matrix) {
                if row.len() != machine_count {
                    return Err(Error::MalformedFeasibility);
                }
                if !row.iter().any(|&ok| ok) {
                    return Err(Error::InfeasibleJob(job.id));
                }
            }
        }
        check_penalty_bound(&jobs, due_date)?;
        Ok(Instance {
            jobs,
            due_date,
            machine_count,
            feasibility,
        })
    }

    pub fn job_count(&self) -> usize {
        self.jobs.len()
    }

    /// Map from job id to its position in `jobs`.
    pub fn index_by_id(&self) -> HashMap<JobId, usize> {
        self.jobs
            .iter()
            .enumerate()
            .map(|(pos, job)| (job.id, pos))
            .collect()
    }

    pub fn job(&self, id: JobId) -> Result<&Job> {
        self.jobs
            .iter()
            .find(|job| job.id == id)
            .ok_or(Error::UnknownJob(id))
    }

    pub fn total_processing(&self) -> i64 {
        self.jobs.iter().map(|job| job.processing_time).sum()
    }
}

/// No completion time can exceed `max(due_date, max P) + sum P`, so the total
/// penalty is bounded by `sum_i max_deviation * max(alpha_i, beta_i)`. Reject
/// instances for which that bound overflows i64.
fn check_penalty_bound(jobs: &[Job], due_date: i64) -> Result<()> {
    let overflow = Error::PenaltyOverflow;
    let sum_p: i64 = jobs
        .iter()
        .try_fold(0i64, |acc, job| acc.checked_add(job.processing_time))
        .ok_or(overflow.clone())?;
    let max_p = jobs.iter().map(|job| job.processing_time).max().unwrap_or(0);
    let max_deviation = due_date
        .max(max_p)
        .checked_add(sum_p)
        .ok_or(overflow.clone())?;
    let mut bound = 0i64;
    for job in jobs {
        let rate = job.early_penalty.max(job.tardy_penalty);
        let term = max_deviation.checked_mul(rate).ok_or(overflow.clone())?;
        bound = bound.checked_add(term).ok_or(overflow.clone())?;
    }
    Ok(())
}

/// An ordering of the instance's jobs, identified by job id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSequence {
    pub order: Vec<JobId>,
}

impl JobSequence {
    pub fn new(order: Vec<JobId>) -> JobSequence {
        JobSequence { order }
    }

    /// The sequence that processes jobs in instance order.
    pub fn identity(instance: &Instance) -> JobSequence {
        JobSequence {
            order: instance.jobs.iter().map(|job| job.id).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Checks that the sequence is a permutation of the instance's job ids.
    pub fn validate(&self, instance: &Instance) -> Result<()> {
        if self.order.is_empty() {
            return Err(Error::EmptySequence);
        }
        if self.order.len() != instance.job_count() {
            return Err(Error::NotAPermutation);
        }
        let index = instance.index_by_id();
        let mut seen = vec![false; instance.job_count()];
        for &id in &self.order {
            let pos = *index.get(&id).ok_or(Error::UnknownJob(id))?;
            if seen[pos] {
                return Err(Error::NotAPermutation);
            }
            seen[pos] = true;
        }
        Ok(())
    }
}

impl From<Vec<JobId>> for JobSequence {
    fn from(order: Vec<JobId>) -> JobSequence {
        JobSequence { order }
    }
}

/// A job placed on a machine together with its completion time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduledJob {
    pub job: JobId,
    pub completion: i64,
}

/// Per-machine ordered completion times. Solvers only produce compact
/// schedules: consecutive jobs on a machine touch, and the first job on a
/// machine never starts before time zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub machines: Vec<Vec<ScheduledJob>>,
}

impl Schedule {
    /// Wraps a single machine's job/completion list.
    pub fn single(jobs: Vec<ScheduledJob>) -> Schedule {
        Schedule {
            machines: vec![jobs],
        }
    }

    pub fn job_count(&self) -> usize {
        self.machines.iter().map(|row| row.len()).sum()
    }

    /// All scheduled jobs in machine-major order.
    pub fn iter_jobs(&self) -> impl Iterator<Item = &ScheduledJob> {
        self.machines.iter().flatten()
    }

    /// Checks coverage, compactness and that no machine starts before zero.
    pub fn validate(&self, instance: &Instance) -> Result<()> {
        let index = instance.index_by_id();
        let mut seen = vec![false; instance.job_count()];
        for row in &self.machines {
            let mut prev: Option<i64> = None;
            for entry in row {
                let pos = *index.get(&entry.job).ok_or(Error::UnknownJob(entry.job))?;
                if seen[pos] {
                    return Err(Error::NotAPermutation);
                }
                seen[pos] = true;
                let p = instance.jobs[pos].processing_time;
                match prev {
                    None => {
                        if entry.completion < p {
                            return Err(Error::StartsBeforeZero);
                        }
                    }
                    Some(c) => {
                        if entry.completion != c + p {
                            return Err(Error::NotCompact);
                        }
                    }
                }
                prev = Some(entry.completion);
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(Error::NotAPermutation)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(id: JobId, p: i64) -> Job {
        Job::new(id, p, 1, 1)
    }

    #[test]
    fn rejects_empty_instance() {
        assert_eq!(Instance::new(vec![], 5, 1), Err(Error::EmptyInstance));
    }

    #[test]
    fn rejects_bad_jobs() {
        assert_eq!(
            Instance::new(vec![Job::new(1, 0, 1, 1)], 5, 1),
            Err(Error::NonPositiveProcessingTime(1))
        );
        assert_eq!(
            Instance::new(vec![Job::new(1, 2, -1, 1)], 5, 1),
            Err(Error::NegativePenalty(1))
        );
        assert_eq!(
            Instance::new(vec![job(1, 2), job(1, 3)], 5, 1),
            Err(Error::DuplicateJob(1))
        );
        assert_eq!(Instance::new(vec![job(1, 2)], 5, 0), Err(Error::NoMachines));
        assert_eq!(
            Instance::new(vec![job(1, 2)], -1, 1),
            Err(Error::NegativeDueDate)
        );
    }

    #[test]
    fn rejects_overflowing_penalties() {
        let huge = Job::new(1, i64::MAX / 2, i64::MAX / 2, 1);
        assert_eq!(
            Instance::new(vec![huge], 0, 1),
            Err(Error::PenaltyOverflow)
        );
    }

    #[test]
    fn accepts_benchmark_scale() {
        // The documented operating range: n = 10000, P <= 20, penalties <= 15.
        let jobs: Vec<Job> = (1..=10_000).map(|i| Job::new(i, 20, 10, 15)).collect();
        let due = 20 * 10_000;
        assert!(Instance::new(jobs, due, 1).is_ok());
    }

    #[test]
    fn feasibility_must_cover_every_job() {
        let jobs = vec![job(1, 2), job(2, 3)];
        let err = Instance::with_feasibility(
            jobs.clone(),
            5,
            2,
            vec![vec![true, true], vec![false, false]],
        );
        assert_eq!(err, Err(Error::InfeasibleJob(2)));
        let err = Instance::with_feasibility(jobs, 5, 2, vec![vec![true, true]]);
        assert_eq!(err, Err(Error::MalformedFeasibility));
    }

    #[test]
    fn sequence_validation() {
        let instance = Instance::new(vec![job(1, 2), job(2, 3)], 5, 1).unwrap();
        assert!(JobSequence::new(vec![2, 1]).validate(&instance).is_ok());
        assert_eq!(
            JobSequence::new(vec![]).validate(&instance),
            Err(Error::EmptySequence)
        );
        assert_eq!(
            JobSequence::new(vec![1, 1]).validate(&instance),
            Err(Error::NotAPermutation)
        );
        assert_eq!(
            JobSequence::new(vec![1, 3]).validate(&instance),
            Err(Error::UnknownJob(3))
        );
        assert_eq!(
            JobSequence::new(vec![1]).validate(&instance),
            Err(Error::NotAPermutation)
        );
    }

    #[test]
    fn schedule_validation_checks_compactness() {
        let instance = Instance::new(vec![job(1, 2), job(2, 3)], 5, 1).unwrap();
        let ok = Schedule::single(vec![
            ScheduledJob {
                job: 1,
                completion: 5,
            },
            ScheduledJob {
                job: 2,
                completion: 8,
            },
        ]);
        assert!(ok.validate(&instance).is_ok());
        let gap = Schedule::single(vec![
            ScheduledJob {
                job: 1,
                completion: 5,
            },
            ScheduledJob {
                job: 2,
                completion: 9,
            },
        ]);
        assert_eq!(gap.validate(&instance), Err(Error::NotCompact));
        let early_start = Schedule::single(vec![
            ScheduledJob {
                job: 1,
                completion: 1,
            },
            ScheduledJob {
                job: 2,
                completion: 4,
            },
        ]);
        assert_eq!(early_start.validate(&instance), Err(Error::StartsBeforeZero));
    }
}
