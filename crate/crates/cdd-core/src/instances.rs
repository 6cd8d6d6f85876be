//! OR-library benchmark ingestion, restrictive due dates and random
//! instance generation.
//!
//! The benchmark text format is whitespace-separated integers: first the
//! number of instances, then for each instance the job count followed by one
//! `P alpha beta` triple per job. The due date of an instance is derived
//! from a restrictive factor `h` as `floor(h * sum(P) / m)`; `h` is kept as
//! an exact rational throughout so the floor is bit-exact.

use std::ops::RangeInclusive;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::RngExt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, Job, JobId, JobSequence};

/// Exact restrictive factor.
pub type HFactor = Ratio<i64>;

/// One parsed benchmark entry: `(P, alpha, beta)` per job, tagged with its
/// 1-based position in the file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEntry {
    pub index: usize,
    pub jobs: Vec<(i64, i64, i64)>,
}

/// All entries of one benchmark file, in file order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawInstanceSet {
    pub entries: Vec<RawEntry>,
}

impl RawEntry {
    /// Materializes the entry against a restrictive factor and machine
    /// count. Jobs are numbered 1..=n in file order.
    pub fn to_instance(&self, h: HFactor, machine_count: usize) -> Result<Instance> {
        if machine_count == 0 {
            return Err(Error::NoMachines);
        }
        let jobs: Vec<Job> = self
            .jobs
            .iter()
            .enumerate()
            .map(|(i, &(p, a, b))| Job::new((i + 1) as JobId, p, a, b))
            .collect();
        let total: i64 = jobs.iter().map(|job| job.processing_time).sum();
        let due = compute_due_date(h, total, machine_count as i64);
        Instance::new(jobs, due, machine_count)
    }
}

impl RawInstanceSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry with 1-based index `k`.
    pub fn entry(&self, k: usize) -> Result<&RawEntry> {
        self.entries.get(k.wrapping_sub(1)).ok_or(Error::SizeLimit {
            what: "benchmark entry index",
            limit: self.entries.len(),
            actual: k,
        })
    }

    /// Canonical text form; parsing it back reproduces the same set.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.entries.len().to_string());
        out.push('\n');
        for entry in &self.entries {
            out.push_str(&entry.jobs.len().to_string());
            out.push('\n');
            for &(p, a, b) in &entry.jobs {
                out.push_str(&format!("{p} {a} {b}\n"));
            }
        }
        out
    }
}

/// Parses the benchmark text format with strict count validation.
pub fn parse_orlib(text: &str) -> Result<RawInstanceSet> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let mut cursor = 0usize;
    let mut next = |what: &str| -> Result<i64> {
        let token = tokens.get(cursor).ok_or_else(|| Error::Parse {
            index: cursor,
            message: format!("unexpected end of input, expected {what}"),
        })?;
        let value: i64 = token.parse().map_err(|_| Error::Parse {
            index: cursor,
            message: format!("expected an integer {what}, found {token:?}"),
        })?;
        cursor += 1;
        Ok(value)
    };

    let count = next("instance count")?;
    if count < 0 {
        return Err(Error::Parse {
            index: 0,
            message: "instance count must be nonnegative".into(),
        });
    }
    let mut entries = Vec::with_capacity(count as usize);
    for index in 1..=count as usize {
        let n = next("job count")?;
        if n <= 0 {
            return Err(Error::Parse {
                index: cursor - 1,
                message: "job count must be positive".into(),
            });
        }
        let mut jobs = Vec::with_capacity(n as usize);
        for _ in 0..n {
            let p = next("processing time")?;
            let a = next("earliness penalty")?;
            let b = next("tardiness penalty")?;
            if p < 1 || a < 1 || b < 1 {
                return Err(Error::Parse {
                    index: cursor - 1,
                    message: "job values must be positive".into(),
                });
            }
            jobs.push((p, a, b));
        }
        entries.push(RawEntry { index, jobs });
    }
    if cursor != tokens.len() {
        return Err(Error::Parse {
            index: cursor,
            message: format!("unexpected trailing token {:?}", tokens[cursor]),
        });
    }
    Ok(RawInstanceSet { entries })
}

/// `floor(h * total_processing / machines)`, evaluated in exact rational
/// arithmetic.
pub fn compute_due_date(h: HFactor, total_processing: i64, machines: i64) -> i64 {
    (h * total_processing / machines).floor().to_integer()
}

/// Parses a restrictive factor given as `a/b`, a decimal like `0.2`, or an
/// integer.
pub fn parse_h(text: &str) -> Result<HFactor> {
    let bad = |message: &str| Error::Parse {
        index: 0,
        message: message.into(),
    };
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad("invalid numerator"))?;
        let den: i64 = den.trim().parse().map_err(|_| bad("invalid denominator"))?;
        if den == 0 {
            return Err(bad("zero denominator"));
        }
        return Ok(Ratio::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let whole: i64 = if whole.is_empty() {
            0
        } else {
            whole.parse().map_err(|_| bad("invalid decimal"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("invalid decimal"));
        }
        let digits = frac.len() as u32;
        let den = 10i64
            .checked_pow(digits)
            .ok_or_else(|| bad("too many decimal digits"))?;
        let frac: i64 = frac.parse().map_err(|_| bad("invalid decimal"))?;
        return Ok(Ratio::new(whole * den + frac, den));
    }
    let whole: i64 = text.parse().map_err(|_| bad("invalid factor"))?;
    Ok(Ratio::from_integer(whole))
}

/// Renders a factor as an exact finite decimal when one exists, `a/b`
/// otherwise.
pub fn format_h(h: HFactor) -> String {
    let num = *h.numer();
    let den = *h.denom();
    let (mut twos, mut fives, mut rest) = (0u32, 0u32, den);
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    if rest != 1 {
        return format!("{num}/{den}");
    }
    let digits = twos.max(fives);
    if digits == 0 {
        return num.to_string();
    }
    let factor = 10i64.pow(digits);
    let scaled = num * factor / den;
    let whole = scaled / factor;
    let frac = (scaled % factor).abs();
    format!("{whole}.{frac:0width$}", width = digits as usize)
}

/// One cell of a benchmark sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchmarkSpec {
    pub restrictive_factor: HFactor,
    pub machine_count: usize,
    pub instance_index: usize,
    pub job_count: usize,
}

impl BenchmarkSpec {
    pub fn new(
        restrictive_factor: HFactor,
        machine_count: usize,
        instance_index: usize,
        job_count: usize,
    ) -> Result<BenchmarkSpec> {
        if restrictive_factor <= Ratio::from_integer(0)
            || restrictive_factor > Ratio::from_integer(1)
        {
            return Err(Error::InvalidConfig(
                "restrictive factor must lie in (0, 1]".into(),
            ));
        }
        if machine_count == 0 {
            return Err(Error::NoMachines);
        }
        Ok(BenchmarkSpec {
            restrictive_factor,
            machine_count,
            instance_index,
            job_count,
        })
    }
}

/// Value ranges for random instances; defaults mirror the benchmark files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenRanges {
    pub processing: RangeInclusive<i64>,
    pub early: RangeInclusive<i64>,
    pub tardy: RangeInclusive<i64>,
}

impl Default for GenRanges {
    fn default() -> GenRanges {
        GenRanges {
            processing: 1..=20,
            early: 1..=10,
            tardy: 1..=15,
        }
    }
}

/// Uniform random instance with `n` jobs and due date `floor(h * sum P / m)`.
pub fn generate_random_instance(
    n: usize,
    h: HFactor,
    machine_count: usize,
    ranges: &GenRanges,
    rng: &mut impl RngExt,
) -> Result<Instance> {
    if n == 0 {
        return Err(Error::EmptyInstance);
    }
    if ranges.processing.is_empty() || *ranges.processing.start() < 1 {
        return Err(Error::EmptyRange("processing time"));
    }
    if ranges.early.is_empty() || *ranges.early.start() < 0 {
        return Err(Error::EmptyRange("earliness penalty"));
    }
    if ranges.tardy.is_empty() || *ranges.tardy.start() < 0 {
        return Err(Error::EmptyRange("tardiness penalty"));
    }
    let jobs: Vec<Job> = (1..=n as JobId)
        .map(|id| {
            Job::new(
                id,
                rng.random_range(ranges.processing.clone()),
                rng.random_range(ranges.early.clone()),
                rng.random_range(ranges.tardy.clone()),
            )
        })
        .collect();
    let total: i64 = jobs.iter().map(|job| job.processing_time).sum();
    let due = compute_due_date(h, total, machine_count as i64);
    Instance::new(jobs, due, machine_count)
}

/// Uniformly random processing order for an instance.
pub fn random_sequence(instance: &Instance, rng: &mut impl RngExt) -> JobSequence {
    let mut order: Vec<JobId> = instance.jobs.iter().map(|job| job.id).collect();
    order.shuffle(rng);
    JobSequence::new(order)
}
