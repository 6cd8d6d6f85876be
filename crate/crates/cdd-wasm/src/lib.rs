//! Browser bindings: three interactive entry points over the core solver,
//! exchanging JSON strings so the page needs no generated glue beyond
//! wasm-bindgen's.
//!
//! Build with `wasm-pack build crates/cdd-wasm --target web`; the static
//! page in `www/` loads the output directly.

use cdd_core::anneal::{anneal, AnnealConfig, Mode};
use cdd_core::gantt::{render_svg, spans};
use cdd_core::instances::parse_h;
use cdd_core::parallel::optimize_parallel;
use cdd_core::single_machine::{
    apply_left_shift, initialize_compact, optimize_sequence_logsearch,
};
use cdd_core::{
    compute_shift_state, evaluate_penalty, Instance, Job, JobId, JobSequence, Schedule,
};
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::wasm_bindgen;

#[derive(Deserialize)]
struct ProblemInput {
    /// One `(P, alpha, beta)` triple per job; ids are 1-based positions.
    jobs: Vec<(i64, i64, i64)>,
    /// Explicit due date, or a restrictive factor like "0.4" or "16/21".
    #[serde(default)]
    due_date: Option<i64>,
    #[serde(default)]
    h: Option<String>,
    #[serde(default = "default_machines")]
    machines: usize,
    /// Processing order; defaults to 1..=n.
    #[serde(default)]
    sequence: Option<Vec<JobId>>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    iterations: Option<u64>,
    #[serde(default)]
    ensemble: Option<usize>,
}

fn default_machines() -> usize {
    1
}

#[derive(Serialize)]
struct SpanOut {
    job: JobId,
    start: i64,
    end: i64,
}

#[derive(Serialize)]
struct SolveOut {
    total: i64,
    sequence: Vec<JobId>,
    due_date: i64,
    machines: Vec<Vec<SpanOut>>,
    svg: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    total_shift: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    history: Option<Vec<(u64, i64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iterations_used: Option<u64>,
}

#[derive(Serialize)]
struct CurveOut {
    due_date: i64,
    shifts: Vec<i64>,
    totals: Vec<i64>,
}

#[derive(Serialize)]
struct ErrorOut {
    error: String,
}

fn fail(message: impl std::fmt::Display) -> String {
    serde_json::to_string(&ErrorOut {
        error: message.to_string(),
    })
    .expect("error serializes")
}

fn build_instance(input: &ProblemInput) -> Result<Instance, String> {
    let jobs: Vec<Job> = input
        .jobs
        .iter()
        .enumerate()
        .map(|(i, &(p, a, b))| Job::new((i + 1) as JobId, p, a, b))
        .collect();
    let total: i64 = jobs.iter().map(|job| job.processing_time).sum();
    let due = match (input.due_date, &input.h) {
        (Some(due), _) => due,
        (None, Some(h)) => {
            let h = parse_h(h).map_err(|err| err.to_string())?;
            cdd_core::instances::compute_due_date(h, total, input.machines as i64)
        }
        (None, None) => return Err("provide either due_date or h".into()),
    };
    Instance::new(jobs, due, input.machines).map_err(|err| err.to_string())
}

fn sequence_of(input: &ProblemInput, instance: &Instance) -> JobSequence {
    match &input.sequence {
        Some(order) => JobSequence::new(order.clone()),
        None => JobSequence::identity(instance),
    }
}

fn solve_out(
    instance: &Instance,
    sequence: Vec<JobId>,
    schedule: &Schedule,
    total: i64,
) -> Result<SolveOut, String> {
    let rows = spans(instance, schedule).map_err(|err| err.to_string())?;
    let svg = render_svg(instance.due_date, &rows).map_err(|err| err.to_string())?;
    Ok(SolveOut {
        total,
        sequence,
        due_date: instance.due_date,
        machines: rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|span| SpanOut {
                        job: span.job,
                        start: span.start,
                        end: span.end,
                    })
                    .collect()
            })
            .collect(),
        svg,
        trace: None,
        total_shift: None,
        history: None,
        iterations_used: None,
    })
}

/// Exact optimization of one sequence; single machine or greedy-assigned
/// parallel machines.
#[wasm_bindgen]
pub fn solve_exact(input_json: &str) -> String {
    let input: ProblemInput = match serde_json::from_str(input_json) {
        Ok(input) => input,
        Err(err) => return fail(err),
    };
    let instance = match build_instance(&input) {
        Ok(instance) => instance,
        Err(err) => return fail(err),
    };
    let sequence = sequence_of(&input, &instance);
    let result = if instance.machine_count == 1 {
        optimize_sequence_logsearch(&instance, &sequence)
            .map_err(|err| err.to_string())
            .and_then(|result| {
                let mut out =
                    solve_out(&instance, sequence.order.clone(), &result.schedule, result.total)?;
                out.trace = Some(result.trace);
                out.total_shift = Some(result.total_shift);
                Ok(out)
            })
    } else {
        optimize_parallel(&instance, &sequence)
            .map_err(|err| err.to_string())
            .and_then(|(schedule, total)| {
                solve_out(&instance, sequence.order.clone(), &schedule, total)
            })
    };
    match result {
        Ok(out) => serde_json::to_string(&out).unwrap_or_else(fail),
        Err(err) => fail(err),
    }
}

/// Ensemble annealing over sequences; returns the best schedule found plus
/// the improvement history for a convergence plot.
#[wasm_bindgen]
pub fn run_anneal(input_json: &str) -> String {
    let input: ProblemInput = match serde_json::from_str(input_json) {
        Ok(input) => input,
        Err(err) => return fail(err),
    };
    let instance = match build_instance(&input) {
        Ok(instance) => instance,
        Err(err) => return fail(err),
    };
    let config = AnnealConfig {
        ensemble_size: input.ensemble,
        max_iterations: input.iterations,
        ..AnnealConfig::new(input.seed.unwrap_or(1))
    };
    let mode = if instance.machine_count == 1 {
        Mode::Single
    } else {
        Mode::Parallel
    };
    match anneal(&instance, &config, mode) {
        Ok(result) => {
            match solve_out(
                &instance,
                result.best_sequence.order.clone(),
                &result.best_schedule,
                result.best_total,
            ) {
                Ok(mut out) => {
                    out.history = Some(result.history);
                    out.iterations_used = Some(result.iterations_used);
                    serde_json::to_string(&out).unwrap_or_else(fail)
                }
                Err(err) => fail(err),
            }
        }
        Err(err) => fail(err),
    }
}

/// Total penalty at every left-shift breakpoint of the compact layout; the
/// curve the breakpoint search descends.
#[wasm_bindgen]
pub fn shift_curve(input_json: &str) -> String {
    let input: ProblemInput = match serde_json::from_str(input_json) {
        Ok(input) => input,
        Err(err) => return fail(err),
    };
    let instance = match build_instance(&input) {
        Ok(instance) => instance,
        Err(err) => return fail(err),
    };
    if instance.machine_count != 1 {
        return fail("the shift curve is defined for a single machine");
    }
    let sequence = sequence_of(&input, &instance);
    let curve = initialize_compact(&instance, &sequence)
        .and_then(|init| {
            let state = compute_shift_state(&instance, &init)?;
            let mut shifts = Vec::with_capacity(state.deviations.len());
            let mut totals = Vec::with_capacity(state.deviations.len());
            for &deviation in &state.deviations {
                let shift = state.headroom.min(deviation).max(0);
                let shifted = apply_left_shift(&instance, &init, shift)?;
                shifts.push(shift);
                totals.push(evaluate_penalty(&instance, &shifted)?.total);
            }
            Ok(CurveOut {
                due_date: instance.due_date,
                shifts,
                totals,
            })
        });
    match curve {
        Ok(out) => serde_json::to_string(&out).unwrap_or_else(fail),
        Err(err) => fail(err),
    }
}
