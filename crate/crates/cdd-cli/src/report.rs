//! JSON result schema shared by `solve` (writer) and `gantt` (reader).

use cdd_core::anneal::ResolvedAnnealConfig;
use cdd_core::gantt::GanttSpan;
use cdd_core::{Instance, Schedule};
use serde::{Deserialize, Serialize};

/// Everything needed to reproduce and render one solve run.
#[derive(Debug, Serialize, Deserialize)]
pub struct SolveReport {
    pub config: EffectiveConfig,
    pub instance: InstanceSummary,
    pub result: SolveOutcome,
}

/// The fully resolved configuration the run actually used.
#[derive(Debug, Serialize, Deserialize)]
pub struct EffectiveConfig {
    pub instance_path: String,
    pub index: usize,
    /// Exact restrictive factor, e.g. "0.4" or "16/21".
    pub h: String,
    pub machines: usize,
    pub mode: String,
    pub seed: u64,
    pub sequence: Option<Vec<u32>>,
    /// Present when mode is "anneal", with every default filled in.
    pub anneal: Option<ResolvedAnnealConfig>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub jobs: usize,
    pub due_date: i64,
    pub machines: usize,
    pub total_processing: i64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub best_total: i64,
    pub sequence: Vec<u32>,
    /// Per machine, each job with its `[start, completion)` span.
    pub machines: Vec<Vec<JobSpan>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_shift: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evaluations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations_used: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub history: Option<Vec<(u64, i64)>>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct JobSpan {
    pub job: u32,
    pub start: i64,
    pub completion: i64,
}

/// Expands a schedule to spans in machine-major order.
pub fn job_spans(instance: &Instance, schedule: &Schedule) -> cdd_core::Result<Vec<Vec<JobSpan>>> {
    Ok(cdd_core::gantt::spans(instance, schedule)?
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|span| JobSpan {
                    job: span.job,
                    start: span.start,
                    completion: span.end,
                })
                .collect()
        })
        .collect())
}

/// The rendering-side view of a stored report.
pub fn gantt_rows(report: &SolveReport) -> Vec<Vec<GanttSpan>> {
    report
        .result
        .machines
        .iter()
        .map(|row| {
            row.iter()
                .map(|span| GanttSpan {
                    job: span.job,
                    start: span.start,
                    end: span.completion,
                })
                .collect()
        })
        .collect()
}
