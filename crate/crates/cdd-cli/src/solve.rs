use std::fs;

use cdd_core::anneal::{anneal, AnnealConfig, Mode};
use cdd_core::instances::{format_h, parse_orlib};
use cdd_core::parallel::optimize_parallel;
use cdd_core::single_machine::optimize_sequence_logsearch;
use cdd_core::{Instance, JobSequence};

use crate::report::{job_spans, EffectiveConfig, InstanceSummary, SolveOutcome, SolveReport};
use crate::{CliError, CliResult, SolveArgs, SolveMode};

pub fn run(args: &SolveArgs) -> CliResult<()> {
    let text = fs::read_to_string(&args.instance)?;
    let set = parse_orlib(&text)?;
    let entry = set.entry(args.index)?;
    let instance = match &args.feasibility {
        None => entry.to_instance(args.h, args.machines)?,
        Some(path) => {
            let matrix = parse_feasibility(&fs::read_to_string(path)?, args.machines)?;
            let base = entry.to_instance(args.h, args.machines)?;
            Instance::with_feasibility(base.jobs, base.due_date, args.machines, matrix)?
        }
    };

    let (outcome, anneal_config) = match args.mode {
        SolveMode::ExactSequence => {
            let order = args.sequence.clone().ok_or_else(|| {
                CliError::usage("--mode exact-sequence requires --sequence")
            })?;
            let sequence = JobSequence::new(order);
            let outcome = solve_exact(&instance, &sequence, args.machines)?;
            (outcome, None)
        }
        SolveMode::Anneal => {
            if args.sequence.is_some() {
                return Err(CliError::usage(
                    "--sequence only applies to --mode exact-sequence",
                ));
            }
            let config = AnnealConfig {
                ensemble_size: args.ensemble,
                max_iterations: args.iterations,
                ..AnnealConfig::new(args.seed)
            };
            let mode = if args.machines == 1 {
                Mode::Single
            } else {
                Mode::Parallel
            };
            let resolved = config.resolve(instance.job_count())?;
            let result = anneal(&instance, &config, mode)?;
            let outcome = SolveOutcome {
                best_total: result.best_total,
                sequence: result.best_sequence.order.clone(),
                machines: job_spans(&instance, &result.best_schedule)?,
                total_shift: None,
                trace: None,
                evaluations: None,
                iterations_used: Some(result.iterations_used),
                history: Some(result.history),
            };
            (outcome, Some(resolved))
        }
    };

    print_outcome(&outcome);

    if let Some(path) = &args.out {
        let report = SolveReport {
            config: EffectiveConfig {
                instance_path: args.instance.display().to_string(),
                index: args.index,
                h: format_h(args.h),
                machines: args.machines,
                mode: match args.mode {
                    SolveMode::ExactSequence => "exact-sequence".into(),
                    SolveMode::Anneal => "anneal".into(),
                },
                seed: args.seed,
                sequence: args.sequence.clone(),
                anneal: anneal_config,
            },
            instance: InstanceSummary {
                jobs: instance.job_count(),
                due_date: instance.due_date,
                machines: instance.machine_count,
                total_processing: instance.total_processing(),
            },
            result: outcome,
        };
        let json = serde_json::to_string_pretty(&report)
            .map_err(|err| CliError::usage(err.to_string()))?;
        fs::write(path, json + "\n")?;
    }
    Ok(())
}

fn solve_exact(
    instance: &Instance,
    sequence: &JobSequence,
    machines: usize,
) -> CliResult<SolveOutcome> {
    if machines == 1 {
        let result = optimize_sequence_logsearch(instance, sequence)?;
        Ok(SolveOutcome {
            best_total: result.total,
            sequence: sequence.order.clone(),
            machines: job_spans(instance, &result.schedule)?,
            total_shift: Some(result.total_shift),
            trace: Some(result.trace),
            evaluations: Some(result.evaluations),
            iterations_used: None,
            history: None,
        })
    } else {
        let (schedule, total) = optimize_parallel(instance, sequence)?;
        Ok(SolveOutcome {
            best_total: total,
            sequence: sequence.order.clone(),
            machines: job_spans(instance, &schedule)?,
            total_shift: None,
            trace: None,
            evaluations: None,
            iterations_used: None,
            history: None,
        })
    }
}

/// One row of 0/1 flags per job, one column per machine.
fn parse_feasibility(text: &str, machines: usize) -> CliResult<Vec<Vec<bool>>> {
    let mut matrix = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::with_capacity(machines);
        for token in line.split_whitespace() {
            match token {
                "0" => row.push(false),
                "1" => row.push(true),
                other => {
                    return Err(CliError::usage(format!(
                        "feasibility line {}: expected 0 or 1, found {other:?}",
                        line_no + 1
                    )))
                }
            }
        }
        matrix.push(row);
    }
    Ok(matrix)
}

fn print_outcome(outcome: &SolveOutcome) {
    println!("best total: {}", outcome.best_total);
    let order: Vec<String> = outcome.sequence.iter().map(|id| id.to_string()).collect();
    println!("sequence: {}", order.join(","));
    for (index, row) in outcome.machines.iter().enumerate() {
        let jobs: Vec<String> = row
            .iter()
            .map(|span| format!("job {} @ {}", span.job, span.completion))
            .collect();
        println!("machine {}: {}", index + 1, jobs.join(", "));
    }
}
