use cdd_core::dynamic::extend_and_reoptimize;
use cdd_core::instances::{generate_random_instance, random_sequence, GenRanges, HFactor};
use cdd_core::oracle::{
    best_shift_bruteforce, global_optimum_parallel, global_optimum_single,
    MAX_GLOBAL_PARALLEL_JOBS, MAX_GLOBAL_SINGLE_JOBS,
};
use cdd_core::parallel::optimize_parallel;
use cdd_core::single_machine::{optimize_sequence_linear, optimize_sequence_logsearch};
use cdd_core::{Instance, JobSequence};
use itertools::Itertools;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{CheckArgs, CheckSuite, CliError, CliResult};

pub fn run(args: &CheckArgs) -> CliResult<()> {
    if args.trials == 0 {
        return Err(CliError::usage("--trials must be positive"));
    }
    if args.max_n == 0 {
        return Err(CliError::usage("--max-n must be positive"));
    }
    match args.suite {
        CheckSuite::Global if args.max_n > MAX_GLOBAL_SINGLE_JOBS => {
            return Err(CliError::usage(format!(
                "the global oracle enumerates at most {MAX_GLOBAL_SINGLE_JOBS} jobs"
            )));
        }
        CheckSuite::Parallel if args.max_n > MAX_GLOBAL_PARALLEL_JOBS => {
            return Err(CliError::usage(format!(
                "the parallel oracle enumerates at most {MAX_GLOBAL_PARALLEL_JOBS} jobs"
            )));
        }
        _ => {}
    }

    let mut total_failures = 0usize;
    let selected = |suite: CheckSuite| args.suite == suite || args.suite == CheckSuite::All;
    if selected(CheckSuite::Shift) {
        total_failures += shift_suite(args);
    }
    if selected(CheckSuite::Global) {
        total_failures += global_suite(args);
    }
    if selected(CheckSuite::Parallel) {
        total_failures += parallel_suite(args);
    }
    if selected(CheckSuite::Dynamic) {
        total_failures += dynamic_suite(args);
    }

    if total_failures > 0 {
        Err(CliError::mismatch(format!(
            "{total_failures} oracle mismatches"
        )))
    } else {
        Ok(())
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_instance(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize, machines: usize) -> Instance {
    let n = rng.random_range(min_n..=max_n);
    let numerator = rng.random_range(1..=10i64);
    generate_random_instance(
        n,
        HFactor::new(numerator, 10),
        machines,
        &GenRanges::default(),
        rng,
    )
    .expect("valid generated instance")
}

/// Per-sequence optimizers against brute-force shift enumeration.
fn shift_suite(args: &CheckArgs) -> usize {
    let mut rng = rng_for(args.seed, 1);
    let mut failures = 0usize;
    for _ in 0..args.trials {
        let instance = random_instance(&mut rng, 1, args.max_n, 1);
        let sequence = random_sequence(&instance, &mut rng);
        let expected = best_shift_bruteforce(&instance, &sequence).expect("oracle");
        let linear = optimize_sequence_linear(&instance, &sequence).expect("solver");
        let log = optimize_sequence_logsearch(&instance, &sequence).expect("solver");
        if linear.total != expected || log.total != linear.total {
            failures += 1;
            println!(
                "FAIL shift: linear {} / logsearch {} / oracle {}\n  instance: {instance:?}\n  sequence: {:?}",
                linear.total, log.total, expected, sequence.order
            );
        }
    }
    report("shift", args.trials, failures);
    failures
}

/// Best total over every sequence against the global oracle.
fn global_suite(args: &CheckArgs) -> usize {
    let max_n = args.max_n.min(MAX_GLOBAL_SINGLE_JOBS);
    let mut rng = rng_for(args.seed, 2);
    let mut failures = 0usize;
    for _ in 0..args.trials {
        let instance = random_instance(&mut rng, 1, max_n, 1);
        let ids: Vec<u32> = instance.jobs.iter().map(|job| job.id).collect();
        let solver_best = ids
            .iter()
            .copied()
            .permutations(ids.len())
            .map(|order| {
                optimize_sequence_logsearch(&instance, &JobSequence::new(order))
                    .expect("solver")
                    .total
            })
            .min()
            .expect("nonempty permutation set");
        let oracle_best = global_optimum_single(&instance).expect("oracle");
        if solver_best != oracle_best {
            failures += 1;
            println!(
                "FAIL global: solver {solver_best} / oracle {oracle_best}\n  instance: {instance:?}"
            );
        }
    }
    report("global", args.trials, failures);
    failures
}

/// Greedy parallel assignment: m=1 equivalence plus the oracle bound.
fn parallel_suite(args: &CheckArgs) -> usize {
    let max_n = args.max_n.min(MAX_GLOBAL_PARALLEL_JOBS);
    let mut rng = rng_for(args.seed, 3);
    let mut failures = 0usize;
    for _ in 0..args.trials {
        // m = 1 must reduce to the single-machine optimizer.
        let single = random_instance(&mut rng, 1, args.max_n.max(2), 1);
        let sequence = random_sequence(&single, &mut rng);
        let (_, parallel_total) = optimize_parallel(&single, &sequence).expect("solver");
        let direct = optimize_sequence_logsearch(&single, &sequence).expect("solver");
        if parallel_total != direct.total {
            failures += 1;
            println!(
                "FAIL parallel (m=1): {parallel_total} vs {}\n  instance: {single:?}\n  sequence: {:?}",
                direct.total, sequence.order
            );
        }

        // Two machines: the heuristic never beats the enumerated optimum.
        let instance = random_instance(&mut rng, 2, max_n.max(2), 2);
        let sequence = random_sequence(&instance, &mut rng);
        let (_, total) = optimize_parallel(&instance, &sequence).expect("solver");
        let optimum = global_optimum_parallel(&instance).expect("oracle");
        if total < optimum {
            failures += 1;
            println!(
                "FAIL parallel (bound): heuristic {total} below optimum {optimum}\n  instance: {instance:?}\n  sequence: {:?}",
                sequence.order
            );
        }
    }
    report("parallel", args.trials, failures);
    failures
}

/// Dynamic extension against a fresh run over the combined sequence.
fn dynamic_suite(args: &CheckArgs) -> usize {
    let mut rng = rng_for(args.seed, 4);
    let mut failures = 0usize;
    for _ in 0..args.trials {
        let instance = random_instance(&mut rng, 2, 60, 1);
        let sequence = random_sequence(&instance, &mut rng);
        let split = rng.random_range(1..instance.job_count());
        let (base_ids, arrival_ids) = sequence.order.split_at(split);

        let base_instance = Instance::new(
            base_ids
                .iter()
                .map(|id| *instance.job(*id).expect("known job"))
                .collect(),
            instance.due_date,
            1,
        )
        .expect("valid sub-instance");
        let base = optimize_sequence_linear(&base_instance, &JobSequence::new(base_ids.to_vec()))
            .expect("solver");
        let extended =
            extend_and_reoptimize(&instance, &base, &JobSequence::new(arrival_ids.to_vec()))
                .expect("solver");
        let fresh = optimize_sequence_linear(&instance, &sequence).expect("solver");
        if extended.total != fresh.total
            || extended.schedule != fresh.schedule
            || extended.gamma < 0
        {
            failures += 1;
            println!(
                "FAIL dynamic: extended {} (gamma {}) vs fresh {}\n  instance: {instance:?}\n  split: {base_ids:?} + {arrival_ids:?}",
                extended.total, extended.gamma, fresh.total
            );
        }
    }
    report("dynamic", args.trials, failures);
    failures
}

fn report(name: &str, trials: usize, failures: usize) {
    println!("suite {name}: {}/{} pass", trials - failures, trials);
}
