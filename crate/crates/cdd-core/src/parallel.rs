//! Greedy list assignment of a sequence onto parallel machines, then
//! independent single-machine optimization per machine.
//!
//! The first `m` sequence jobs seed one machine each, finishing at
//! `max(P_i, D)`. Every later job goes to the machine whose last job
//! completes earliest (lowest index on ties), which minimizes the job's
//! start time; with a feasibility restriction the argmin runs over the
//! feasible machines only. The assignment preserves the sequence order
//! within each machine, and the per-machine sub-sequences are then
//! optimized independently against the shared due date.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, JobId, JobSequence, Schedule};
use crate::single_machine::optimize_sequence_logsearch;

/// Sequence-preserving partition of the jobs across machines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineAssignment {
    /// Ordered job ids per machine.
    pub machines: Vec<Vec<JobId>>,
    /// Completion time of each machine's last job at the end of assignment.
    pub loads: Vec<i64>,
}

impl MachineAssignment {
    pub fn job_counts(&self) -> Vec<usize> {
        self.machines.iter().map(|row| row.len()).collect()
    }
}

/// Index of the machine with the smallest load, restricted to feasible
/// machines when a mask is given; ties break to the lowest index.
pub fn select_machine(loads: &[i64], feasible: Option<&[bool]>) -> Result<usize> {
    if loads.is_empty() {
        return Err(Error::NoMachines);
    }
    if let Some(mask) = feasible {
        if mask.len() != loads.len() {
            return Err(Error::MalformedFeasibility);
        }
    }
    let mut best: Option<usize> = None;
    for (idx, &load) in loads.iter().enumerate() {
        if let Some(mask) = feasible {
            if !mask[idx] {
                continue;
            }
        }
        if best.map(|b| load < loads[b]).unwrap_or(true) {
            best = Some(idx);
        }
    }
    best.ok_or(Error::NoFeasibleMachine)
}

/// Assigns the sequence to the instance's machines.
///
/// Idle machines carry load zero, so while any feasible machine is still
/// empty the argmin seeds it (lowest index first) and its load becomes
/// `max(P_i, D)`; afterwards each job lands on the feasible machine with the
/// earliest last completion and adds its processing time. With more machines
/// than jobs the surplus machines stay empty.
pub fn assign_jobs(instance: &Instance, sequence: &JobSequence) -> Result<MachineAssignment> {
    sequence.validate(instance)?;
    let m = instance.machine_count;
    let index = instance.index_by_id();
    let mut machines: Vec<Vec<JobId>> = vec![Vec::new(); m];
    let mut loads = vec![0i64; m];
    for &id in &sequence.order {
        let pos = index[&id];
        let row = instance
            .feasibility
            .as_ref()
            .map(|matrix| matrix[pos].as_slice());
        let target = select_machine(&loads, row).map_err(|err| match err {
            Error::NoFeasibleMachine => Error::InfeasibleJob(id),
            other => other,
        })?;
        let p = instance.jobs[pos].processing_time;
        loads[target] = if machines[target].is_empty() {
            p.max(instance.due_date)
        } else {
            loads[target] + p
        };
        machines[target].push(id);
    }
    Ok(MachineAssignment { machines, loads })
}

/// Assigns the sequence and optimizes every machine independently.
///
/// Returns the combined schedule (one row per machine, empty rows for idle
/// machines) and the summed total.
pub fn optimize_parallel(instance: &Instance, sequence: &JobSequence) -> Result<(Schedule, i64)> {
    let assignment = assign_jobs(instance, sequence)?;
    let index = instance.index_by_id();
    let mut rows = Vec::with_capacity(assignment.machines.len());
    let mut total = 0i64;
    for ids in &assignment.machines {
        if ids.is_empty() {
            rows.push(Vec::new());
            continue;
        }
        let sub = Instance::new(
            ids.iter().map(|id| instance.jobs[index[id]]).collect(),
            instance.due_date,
            1,
        )?;
        let result = optimize_sequence_logsearch(&sub, &JobSequence::new(ids.clone()))?;
        total += result.total;
        rows.push(result.schedule.machines.into_iter().next().unwrap());
    }
    Ok((Schedule { machines: rows }, total))
}
