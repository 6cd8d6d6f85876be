//! Ensemble simulated annealing over job sequences.
//!
//! Candidate sequences are scored exactly (exponential-search single-machine
//! optimization, or greedy assignment plus per-machine optimization in
//! parallel mode), so the search only has to find a good processing order.
//! The ensemble runs independent chains on deterministic per-chain RNG
//! streams derived from one seed; the reported result is the best candidate
//! ever scored by any chain. Worsening moves pass through the Metropolis
//! rule and, failing that, a small constant acceptance probability that
//! keeps the walk mobile once the temperature has decayed to nothing.

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, JobSequence, Schedule};
use crate::parallel::optimize_parallel;
use crate::single_machine::optimize_sequence_logsearch;

/// How candidate sequences are scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact single-machine sequence optimization.
    Single,
    /// Greedy machine assignment plus independent per-machine optimization.
    Parallel,
}

/// Chains synchronize this often; a span without any global improvement
/// replaces the worst chain's state with the global best.
const REINJECTION_INTERVAL: u64 = 1000;

/// Annealing parameters. `None` fields resolve against the job count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnealConfig {
    /// Number of independent chains. Default: `4 + n/10`.
    pub ensemble_size: Option<usize>,
    /// Iteration budget per chain. Default: `500 * n`.
    pub max_iterations: Option<u64>,
    /// Multiplied into the temperature after every iteration.
    pub cooling_rate: f64,
    /// Fallback acceptance probability once Metropolis rejects.
    pub constant_accept: f64,
    /// Random sequences drawn to estimate the initial temperature.
    pub temperature_samples: usize,
    pub seed: u64,
}

impl AnnealConfig {
    pub fn new(seed: u64) -> AnnealConfig {
        AnnealConfig {
            ensemble_size: None,
            max_iterations: None,
            cooling_rate: 0.999,
            constant_accept: 0.07,
            temperature_samples: 100,
            seed,
        }
    }

    /// Fills the size-dependent defaults and validates every field.
    pub fn resolve(&self, job_count: usize) -> Result<ResolvedAnnealConfig> {
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return Err(Error::InvalidConfig(
                "cooling rate must lie strictly between 0 and 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.constant_accept) {
            return Err(Error::InvalidConfig(
                "constant acceptance probability must lie in [0, 1]".into(),
            ));
        }
        if self.temperature_samples < 2 {
            return Err(Error::InvalidConfig(
                "temperature estimation needs at least two samples".into(),
            ));
        }
        let ensemble_size = self.ensemble_size.unwrap_or(4 + job_count / 10);
        let max_iterations = self.max_iterations.unwrap_or(500 * job_count as u64);
        if ensemble_size == 0 {
            return Err(Error::InvalidConfig("ensemble must not be empty".into()));
        }
        if max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "iteration budget must be positive".into(),
            ));
        }
        Ok(ResolvedAnnealConfig {
            ensemble_size,
            max_iterations,
            cooling_rate: self.cooling_rate,
            constant_accept: self.constant_accept,
            temperature_samples: self.temperature_samples,
            seed: self.seed,
        })
    }
}

/// [`AnnealConfig`] with all defaults filled in; what a run actually used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolvedAnnealConfig {
    pub ensemble_size: usize,
    pub max_iterations: u64,
    pub cooling_rate: f64,
    pub constant_accept: f64,
    pub temperature_samples: usize,
    pub seed: u64,
}

/// Best sequence found by [`anneal`] together with its exact schedule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnealResult {
    pub best_sequence: JobSequence,
    pub best_schedule: Schedule,
    pub best_total: i64,
    /// Scored perturbation iterations summed over all chains.
    pub iterations_used: u64,
    /// `(iteration, best_total)` at every improvement of the global best,
    /// starting with the best initial candidate at iteration zero.
    pub history: Vec<(u64, i64)>,
}

/// Scores one sequence exactly under the given mode.
pub fn score_sequence(
    instance: &Instance,
    sequence: &JobSequence,
    mode: Mode,
) -> Result<(i64, Schedule)> {
    match mode {
        Mode::Single => {
            let result = optimize_sequence_logsearch(instance, sequence)?;
            Ok((result.total, result.schedule))
        }
        Mode::Parallel => {
            let (schedule, total) = optimize_parallel(instance, sequence)?;
            Ok((total, schedule))
        }
    }
}

/// Twice the standard deviation of the exactly-optimized totals of
/// `samples` uniformly random sequences.
pub fn estimate_initial_temperature(
    instance: &Instance,
    samples: usize,
    mode: Mode,
    rng: &mut ChaCha8Rng,
) -> Result<f64> {
    if samples < 2 {
        return Err(Error::InvalidConfig(
            "temperature estimation needs at least two samples".into(),
        ));
    }
    let mut order = JobSequence::identity(instance).order;
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for _ in 0..samples {
        order.shuffle(rng);
        let (total, _) = score_sequence(instance, &JobSequence::new(order.clone()), mode)?;
        let energy = total as f64;
        sum += energy;
        sum_sq += energy * energy;
    }
    let mean = sum / samples as f64;
    let variance = (sum_sq / samples as f64 - mean * mean).max(0.0);
    Ok(2.0 * variance.sqrt())
}

/// Rearranges `2 + floor(sqrt(n/10))` uniformly chosen positions by a
/// uniformly drawn non-identity permutation; always returns a different
/// valid permutation of the same ids.
pub fn perturb_sequence(sequence: &JobSequence, rng: &mut ChaCha8Rng) -> JobSequence {
    let n = sequence.len();
    assert!(n >= 2, "perturbation needs at least two jobs");
    let k = selection_size(n);
    let mut positions = rand::seq::index::sample(rng, n, k).into_vec();
    positions.sort_unstable();
    let original: Vec<_> = positions.iter().map(|&p| sequence.order[p]).collect();
    let mut rearranged = original.clone();
    // Identity draws are rejected so the move never wastes the iteration.
    loop {
        rearranged.shuffle(rng);
        if rearranged != original {
            break;
        }
    }
    let mut order = sequence.order.clone();
    for (&position, &id) in positions.iter().zip(&rearranged) {
        order[position] = id;
    }
    JobSequence::new(order)
}

/// Number of positions a perturbation rearranges.
pub fn selection_size(job_count: usize) -> usize {
    2 + (job_count / 10).isqrt()
}

/// Acceptance rule: improving moves always pass; worsening moves pass with
/// the Metropolis probability `exp(-delta/T)` and, if that rejects, with the
/// constant fallback probability.
pub fn accept_candidate(
    delta: i64,
    temperature: f64,
    constant_accept: f64,
    rng: &mut ChaCha8Rng,
) -> bool {
    if delta <= 0 {
        return true;
    }
    let metropolis = if temperature > 0.0 {
        (-(delta as f64) / temperature).exp()
    } else {
        0.0
    };
    if rng.random::<f64>() < metropolis {
        true
    } else {
        rng.random::<f64>() < constant_accept
    }
}

struct Chain {
    rng: ChaCha8Rng,
    current: JobSequence,
    current_total: i64,
    temperature: f64,
    personal_best: i64,
}

struct Improvement {
    iteration: u64,
    chain: usize,
    total: i64,
    sequence: JobSequence,
    schedule: Schedule,
}

struct BestEntry {
    total: i64,
    chain: usize,
    iteration: u64,
    sequence: JobSequence,
    schedule: Schedule,
}

/// Runs the ensemble search. Deterministic for a fixed `(instance, config,
/// mode)` regardless of how the chains would be interleaved: chains only
/// interact at reinjection boundaries and every reduction is ordered by
/// `(total, chain, iteration)`.
pub fn anneal(instance: &Instance, config: &AnnealConfig, mode: Mode) -> Result<AnnealResult> {
    let n = instance.job_count();
    let resolved = config.resolve(n)?;

    if n == 1 {
        let sequence = JobSequence::identity(instance);
        let (total, schedule) = score_sequence(instance, &sequence, mode)?;
        return Ok(AnnealResult {
            best_sequence: sequence,
            best_schedule: schedule,
            best_total: total,
            iterations_used: 0,
            history: vec![(0, total)],
        });
    }

    let chain_rng = |stream: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(resolved.seed);
        rng.set_stream(stream);
        rng
    };

    // One shared estimate per run, on its own stream.
    let mut temperature_rng = chain_rng(resolved.ensemble_size as u64);
    let initial_temperature = estimate_initial_temperature(
        instance,
        resolved.temperature_samples,
        mode,
        &mut temperature_rng,
    )?;

    let mut chains = Vec::with_capacity(resolved.ensemble_size);
    let mut best: Option<BestEntry> = None;
    let mut history: Vec<(u64, i64)> = Vec::new();
    let mut initial_events = Vec::new();
    for index in 0..resolved.ensemble_size {
        let mut rng = chain_rng(index as u64);
        let mut order = JobSequence::identity(instance).order;
        order.shuffle(&mut rng);
        let sequence = JobSequence::new(order);
        let (total, schedule) = score_sequence(instance, &sequence, mode)?;
        initial_events.push(Improvement {
            iteration: 0,
            chain: index,
            total,
            sequence: sequence.clone(),
            schedule,
        });
        chains.push(Chain {
            rng,
            current: sequence,
            current_total: total,
            temperature: initial_temperature,
            personal_best: total,
        });
    }
    merge_improvements(initial_events, &mut best, &mut history);

    let mut iterations_used = 0u64;
    let mut next_iteration = 1u64;
    while next_iteration <= resolved.max_iterations {
        let span_end = (next_iteration + REINJECTION_INTERVAL - 1).min(resolved.max_iterations);
        let mut events = Vec::new();
        for (index, chain) in chains.iter_mut().enumerate() {
            for iteration in next_iteration..=span_end {
                let candidate = perturb_sequence(&chain.current, &mut chain.rng);
                let (total, schedule) = score_sequence(instance, &candidate, mode)?;
                iterations_used += 1;
                let delta = total - chain.current_total;
                if accept_candidate(
                    delta,
                    chain.temperature,
                    resolved.constant_accept,
                    &mut chain.rng,
                ) {
                    chain.current = candidate.clone();
                    chain.current_total = total;
                }
                if total < chain.personal_best {
                    chain.personal_best = total;
                    events.push(Improvement {
                        iteration,
                        chain: index,
                        total,
                        sequence: candidate,
                        schedule,
                    });
                }
                chain.temperature *= resolved.cooling_rate;
            }
        }
        let improved = merge_improvements(events, &mut best, &mut history);
        next_iteration = span_end + 1;
        if !improved && next_iteration <= resolved.max_iterations {
            reinject_best(&mut chains, best.as_ref().expect("seeded best"));
        }
    }

    let best = best.expect("at least one scored candidate");
    Ok(AnnealResult {
        best_sequence: best.sequence,
        best_schedule: best.schedule,
        best_total: best.total,
        iterations_used,
        history,
    })
}

/// Folds a span's improvements into the global best and history. Returns
/// whether the global best total improved.
fn merge_improvements(
    mut events: Vec<Improvement>,
    best: &mut Option<BestEntry>,
    history: &mut Vec<(u64, i64)>,
) -> bool {
    let mut improved = false;
    // Chronological order for the history; ties on total resolve by the
    // (total, chain, iteration) ordering below.
    events.sort_by_key(|event| (event.iteration, event.chain));
    for event in events {
        let new_low = history.last().map(|&(_, t)| event.total < t).unwrap_or(true);
        if new_low {
            history.push((event.iteration, event.total));
            improved = true;
        }
        let replace = match best.as_ref() {
            None => true,
            Some(current) => {
                (event.total, event.chain, event.iteration)
                    < (current.total, current.chain, current.iteration)
            }
        };
        if replace {
            *best = Some(BestEntry {
                total: event.total,
                chain: event.chain,
                iteration: event.iteration,
                sequence: event.sequence,
                schedule: event.schedule,
            });
        }
    }
    improved
}

/// Replaces the worst chain's walk state with the global best sequence.
fn reinject_best(chains: &mut [Chain], best: &BestEntry) {
    let worst = chains
        .iter()
        .enumerate()
        .max_by_key(|(index, chain)| (chain.current_total, *index))
        .map(|(index, _)| index)
        .expect("ensemble is not empty");
    let chain = &mut chains[worst];
    chain.current = best.sequence.clone();
    chain.current_total = best.total;
    chain.personal_best = chain.personal_best.min(best.total);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Job, JobId};
    use crate::oracle::global_optimum_single;
    use itertools::Itertools;

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
    fn selection_size_formula() {
        assert_eq!(selection_size(10), 3);
        assert_eq!(selection_size(200), 6);
        assert_eq!(selection_size(2), 2);
        assert_eq!(selection_size(1000), 12);
    }

    #[test]
    fn perturbation_always_moves_and_stays_a_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // Ten thousand trials spread over a range of sizes.
        for &n in &[2usize, 3, 10, 37, 200] {
            let instance = Instance::new(
                (1..=n as JobId).map(|id| Job::new(id, 1, 1, 1)).collect(),
                5,
                1,
            )
            .unwrap();
            let mut sequence = JobSequence::identity(&instance);
            for _ in 0..2000 {
                let next = perturb_sequence(&sequence, &mut rng);
                assert_ne!(next.order, sequence.order);
                assert!(next.validate(&instance).is_ok());
                sequence = next;
            }
        }
    }

    #[test]
    fn acceptance_is_certain_for_improvements() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert!(accept_candidate(-5, 10.0, 0.07, &mut rng));
            assert!(accept_candidate(0, 0.0, 0.0, &mut rng));
        }
    }

    #[test]
    fn acceptance_falls_back_to_constant_probability() {
        // With the temperature gone the Metropolis term vanishes and only
        // the constant fallback remains.
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let trials = 100_000;
        let accepted = (0..trials)
            .filter(|_| accept_candidate(50, 1e-12, 0.07, &mut rng))
            .count();
        let rate = accepted as f64 / trials as f64;
        assert!((rate - 0.07).abs() < 0.005, "rate {rate}");
    }

    #[test]
    fn acceptance_combines_metropolis_and_constant() {
        // delta = T ln 2 gives a Metropolis probability of one half, so the
        // overall acceptance probability is 0.5 + 0.5 * 0.07 = 0.535.
        let delta = 100i64;
        let temperature = delta as f64 / std::f64::consts::LN_2;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let trials = 100_000;
        let accepted = (0..trials)
            .filter(|_| accept_candidate(delta, temperature, 0.07, &mut rng))
            .count();
        let rate = accepted as f64 / trials as f64;
        assert!((rate - 0.535).abs() < 0.01, "rate {rate}");
    }

    #[test]
    fn temperature_estimate_is_zero_without_variance() {
        let single = Instance::new(vec![Job::new(1, 5, 2, 3)], 4, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = estimate_initial_temperature(&single, 10, Mode::Single, &mut rng).unwrap();
        assert_eq!(t, 0.0);

        // Two interchangeable jobs: both orders optimize to the same total.
        let twin = Instance::new(vec![Job::new(1, 3, 2, 2), Job::new(2, 3, 2, 2)], 6, 1).unwrap();
        let t = estimate_initial_temperature(&twin, 16, Mode::Single, &mut rng).unwrap();
        assert_eq!(t, 0.0);
    }

    #[test]
    fn temperature_estimate_converges_to_exhaustive_value() {
        let instance = five_jobs();
        // Exact distribution: optimized totals of all 120 permutations.
        let ids: Vec<JobId> = vec![1, 2, 3, 4, 5];
        let totals: Vec<f64> = ids
            .iter()
            .copied()
            .permutations(5)
            .map(|perm| {
                score_sequence(&instance, &JobSequence::new(perm), Mode::Single)
                    .unwrap()
                    .0 as f64
            })
            .collect();
        let mean = totals.iter().sum::<f64>() / totals.len() as f64;
        let variance =
            totals.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / totals.len() as f64;
        let exact = 2.0 * variance.sqrt();

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let estimate =
            estimate_initial_temperature(&instance, 4000, Mode::Single, &mut rng).unwrap();
        assert!(
            (estimate - exact).abs() / exact < 0.1,
            "estimate {estimate} vs exact {exact}"
        );
    }

    #[test]
    fn anneal_single_job() {
        // One job, P = 5 against D = 4: it completes at 5, one unit tardy,
        // and no search is needed.
        let instance = Instance::new(vec![Job::new(1, 5, 2, 3)], 4, 1).unwrap();
        let result = anneal(&instance, &AnnealConfig::new(9), Mode::Single).unwrap();
        assert_eq!(result.best_total, 3);
        assert_eq!(result.iterations_used, 0);
        assert_eq!(result.history, vec![(0, 3)]);
    }

    #[test]
    fn anneal_is_deterministic() {
        let instance = five_jobs();
        let config = AnnealConfig {
            max_iterations: Some(400),
            ..AnnealConfig::new(123)
        };
        let a = anneal(&instance, &config, Mode::Single).unwrap();
        let b = anneal(&instance, &config, Mode::Single).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn anneal_finds_small_global_optima() {
        let instance = five_jobs();
        let expected = global_optimum_single(&instance).unwrap();
        let config = AnnealConfig::new(7);
        let result = anneal(&instance, &config, Mode::Single).unwrap();
        assert_eq!(result.best_total, expected);
        // Scoring consistency and history shape.
        let (rescored, _) = score_sequence(&instance, &result.best_sequence, Mode::Single).unwrap();
        assert_eq!(rescored, result.best_total);
        assert!(result.history.windows(2).all(|w| w[1].1 < w[0].1));
        assert_eq!(result.history.last().unwrap().1, result.best_total);
    }

    #[test]
    fn config_validation() {
        let mut config = AnnealConfig::new(1);
        config.cooling_rate = 1.0;
        assert!(matches!(config.resolve(5), Err(Error::InvalidConfig(_))));
        let mut config = AnnealConfig::new(1);
        config.constant_accept = 1.5;
        assert!(matches!(config.resolve(5), Err(Error::InvalidConfig(_))));
        let config = AnnealConfig::new(1);
        let resolved = config.resolve(25).unwrap();
        assert_eq!(resolved.ensemble_size, 6);
        assert_eq!(resolved.max_iterations, 12_500);
    }
}
