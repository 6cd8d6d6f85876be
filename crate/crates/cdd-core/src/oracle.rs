//! Brute-force reference optimizers.
//!
//! Everything here scores candidates exclusively through
//! [`evaluate_penalty`] over explicitly enumerated schedules and shares no
//! logic with the solvers beyond the core types. With integral processing
//! times and due date the penalty is piecewise linear in the shift with
//! integer breakpoints, so enumerating integer shifts is exact. Clarity over
//! speed; the entry points refuse sizes they cannot enumerate.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::model::{Instance, Job, JobSequence, Schedule, ScheduledJob};
use crate::penalty::evaluate_penalty;

/// Enumeration cap for [`global_optimum_single`] (n! permutations).
pub const MAX_GLOBAL_SINGLE_JOBS: usize = 9;
/// Enumeration caps for [`global_optimum_parallel`].
pub const MAX_GLOBAL_PARALLEL_JOBS: usize = 6;
pub const MAX_GLOBAL_PARALLEL_MACHINES: usize = 3;

/// Best total over every integral left shift of the compact layout of
/// `sequence` on a single machine.
pub fn best_shift_bruteforce(instance: &Instance, sequence: &JobSequence) -> Result<i64> {
    if instance.machine_count != 1 {
        return Err(Error::NotSingleMachine);
    }
    sequence.validate(instance)?;
    let index = instance.index_by_id();
    let jobs: Vec<&Job> = sequence.order.iter().map(|id| &instance.jobs[index[id]]).collect();
    best_shift_over(instance, &jobs)
}

fn best_shift_over(instance: &Instance, jobs: &[&Job]) -> Result<i64> {
    // Compact layout: first job done at max(P_1, D), the rest back to back.
    let mut completions = Vec::with_capacity(jobs.len());
    let mut current = jobs[0].processing_time.max(instance.due_date);
    completions.push(current);
    for job in &jobs[1..] {
        current += job.processing_time;
        completions.push(current);
    }
    let max_shift = completions[0] - jobs[0].processing_time;
    let mut best = i64::MAX;
    for shift in 0..=max_shift {
        let schedule = Schedule::single(
            jobs.iter()
                .zip(&completions)
                .map(|(job, c)| ScheduledJob {
                    job: job.id,
                    completion: c - shift,
                })
                .collect(),
        );
        best = best.min(evaluate_penalty(instance, &schedule)?.total);
    }
    Ok(best)
}

/// Minimum of [`best_shift_bruteforce`] over all job permutations.
pub fn global_optimum_single(instance: &Instance) -> Result<i64> {
    let n = instance.job_count();
    if n > MAX_GLOBAL_SINGLE_JOBS {
        return Err(Error::SizeLimit {
            what: "global single-machine enumeration",
            limit: MAX_GLOBAL_SINGLE_JOBS,
            actual: n,
        });
    }
    if instance.machine_count != 1 {
        return Err(Error::NotSingleMachine);
    }
    let mut best = i64::MAX;
    for perm in instance.jobs.iter().permutations(n) {
        best = best.min(best_shift_over(instance, &perm)?);
    }
    Ok(best)
}

/// Minimum total over every ordered partition of the jobs onto the machines,
/// scoring each machine by shift enumeration over each permutation of its
/// jobs.
pub fn global_optimum_parallel(instance: &Instance) -> Result<i64> {
    let n = instance.job_count();
    let m = instance.machine_count;
    if n > MAX_GLOBAL_PARALLEL_JOBS {
        return Err(Error::SizeLimit {
            what: "global parallel enumeration (jobs)",
            limit: MAX_GLOBAL_PARALLEL_JOBS,
            actual: n,
        });
    }
    if m > MAX_GLOBAL_PARALLEL_MACHINES {
        return Err(Error::SizeLimit {
            what: "global parallel enumeration (machines)",
            limit: MAX_GLOBAL_PARALLEL_MACHINES,
            actual: m,
        });
    }

    // Best single-machine value for each subset of jobs, memoized by bitmask.
    let mut subset_best: HashMap<u32, i64> = HashMap::new();
    let mut best_for_subset = |mask: u32| -> Result<i64> {
        if mask == 0 {
            return Ok(0);
        }
        if let Some(&v) = subset_best.get(&mask) {
            return Ok(v);
        }
        let members: Vec<&Job> = instance
            .jobs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, job)| job)
            .collect();
        let sub = Instance::new(
            members.iter().map(|&&job| job).collect(),
            instance.due_date,
            1,
        )?;
        let mut best = i64::MAX;
        for perm in sub.jobs.iter().permutations(members.len()) {
            best = best.min(best_shift_over(&sub, &perm)?);
        }
        subset_best.insert(mask, best);
        Ok(best)
    };

    let feasible = |job_pos: usize, machine: usize| -> bool {
        instance
            .feasibility
            .as_ref()
            .map(|matrix| matrix[job_pos][machine])
            .unwrap_or(true)
    };

    // Every assignment of jobs to machines, encoded in base m.
    let mut best = i64::MAX;
    let combos = (m as u64).pow(n as u32);
    'outer: for code in 0..combos {
        let mut masks = vec![0u32; m];
        let mut rest = code;
        for pos in 0..n {
            let machine = (rest % m as u64) as usize;
            rest /= m as u64;
            if !feasible(pos, machine) {
                continue 'outer;
            }
            masks[machine] |= 1 << pos;
        }
        let mut total = 0i64;
        for &mask in &masks {
            total += best_for_subset(mask)?;
        }
        best = best.min(total);
    }
    if best == i64::MAX {
        return Err(Error::NoFeasibleMachine);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five_jobs() -> Instance {
        Instance::new(
            vec![
                Job::new(1, 6, 7, 9),
                Job::new(2, 5, 9, 5),
                Job::new(3, 2, 6, 4),
                Job::new(4, 4, 9, 3),
                Job::new(5, 4, 3, 2),
            ],
            16,
            1,
        )
        .unwrap()
    }

    #[test]
    fn best_shift_on_worked_example() {
        let instance = five_jobs();
        let sequence = JobSequence::new(vec![1, 2, 3, 4, 5]);
        assert_eq!(best_shift_bruteforce(&instance, &sequence).unwrap(), 81);
    }

    #[test]
    fn best_shift_single_job() {
        let instance = Instance::new(vec![Job::new(1, 6, 7, 9)], 16, 1).unwrap();
        let sequence = JobSequence::new(vec![1]);
        assert_eq!(best_shift_bruteforce(&instance, &sequence).unwrap(), 0);
    }

    #[test]
    fn global_single_two_jobs() {
        let instance = Instance::new(
            vec![Job::new(1, 2, 1, 1), Job::new(2, 3, 1, 1)],
            5,
            1,
        )
        .unwrap();
        // Order [2, 1] completes job 2 at the due date for a total of 2;
        // order [1, 2] cannot do better than 3.
        assert_eq!(global_optimum_single(&instance).unwrap(), 2);
    }

    #[test]
    fn global_single_trivial_and_limit() {
        let instance = Instance::new(vec![Job::new(1, 3, 4, 5)], 10, 1).unwrap();
        assert_eq!(global_optimum_single(&instance).unwrap(), 0);

        let big: Vec<Job> = (1..=10).map(|i| Job::new(i, 1, 1, 1)).collect();
        let instance = Instance::new(big, 5, 1).unwrap();
        assert!(matches!(
            global_optimum_single(&instance),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn global_parallel_bounds_worked_example() {
        let instance = Instance::new(five_jobs().jobs, 16, 2).unwrap();
        // The greedy per-sequence assignment reaches 32; the enumerated
        // optimum can only be at or below that.
        assert!(global_optimum_parallel(&instance).unwrap() <= 32);
    }

    #[test]
    fn global_parallel_each_job_alone() {
        let jobs = vec![Job::new(1, 2, 3, 4), Job::new(2, 4, 5, 6)];
        let instance = Instance::new(jobs, 5, 3).unwrap();
        assert_eq!(global_optimum_parallel(&instance).unwrap(), 0);
    }

    #[test]
    fn global_parallel_single_machine_agrees() {
        let jobs = vec![
            Job::new(1, 2, 1, 3),
            Job::new(2, 3, 2, 1),
            Job::new(3, 1, 4, 2),
            Job::new(4, 5, 1, 1),
        ];
        let single = Instance::new(jobs.clone(), 6, 1).unwrap();
        let as_parallel = Instance::new(jobs, 6, 1).unwrap();
        assert_eq!(
            global_optimum_parallel(&as_parallel).unwrap(),
            global_optimum_single(&single).unwrap()
        );
    }

    #[test]
    fn global_parallel_respects_limits() {
        let jobs: Vec<Job> = (1..=7).map(|i| Job::new(i, 1, 1, 1)).collect();
        let instance = Instance::new(jobs, 3, 2).unwrap();
        assert!(matches!(
            global_optimum_parallel(&instance),
            Err(Error::SizeLimit { .. })
        ));
    }
}
