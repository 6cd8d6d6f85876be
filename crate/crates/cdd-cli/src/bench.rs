use std::fs;
use std::time::Instant;

use cdd_core::anneal::{anneal, AnnealConfig, Mode};
use cdd_core::instances::{format_h, parse_orlib, BenchmarkSpec, HFactor};
use rayon::prelude::*;

use crate::{BenchArgs, CliError, CliResult};

struct Row {
    n: usize,
    k: usize,
    h: HFactor,
    m: usize,
    seed: u64,
    best_total: i64,
    iterations_used: u64,
    wall_ms: u64,
}

pub fn run(args: &BenchArgs) -> CliResult<()> {
    if args.seeds.is_empty() {
        return Err(CliError::usage("--seeds must not be empty"));
    }
    if args.h_list.is_empty() {
        return Err(CliError::usage("--h-list must not be empty"));
    }
    let text = fs::read_to_string(&args.instances)?;
    let set = parse_orlib(&text)?;
    if set.is_empty() {
        return Err(CliError::usage("benchmark file contains no instances"));
    }

    // One cell per (instance, h, seed); cells are independent and fan out
    // across threads, rows are sorted canonically before writing.
    let mut cells = Vec::new();
    for entry in &set.entries {
        for &h in &args.h_list {
            BenchmarkSpec::new(h, args.machines, entry.index, entry.jobs.len())?;
            for &seed in &args.seeds {
                cells.push((entry, h, seed));
            }
        }
    }

    let mode = if args.machines == 1 {
        Mode::Single
    } else {
        Mode::Parallel
    };
    let mut rows = cells
        .par_iter()
        .map(|&(entry, h, seed)| -> Result<Row, cdd_core::Error> {
            let instance = entry.to_instance(h, args.machines)?;
            let config = AnnealConfig {
                ensemble_size: args.ensemble,
                max_iterations: args.iterations,
                ..AnnealConfig::new(seed)
            };
            let started = Instant::now();
            let result = anneal(&instance, &config, mode)?;
            let wall_ms = if args.timing {
                started.elapsed().as_millis() as u64
            } else {
                0
            };
            Ok(Row {
                n: entry.jobs.len(),
                k: entry.index,
                h,
                m: args.machines,
                seed,
                best_total: result.best_total,
                iterations_used: result.iterations_used,
                wall_ms,
            })
        })
        .collect::<Result<Vec<Row>, _>>()?;
    rows.sort_by_key(|row| (row.n, row.k, row.h, row.m, row.seed));

    let mut csv = String::from("n,k,h,m,seed,best_total,iterations_used,wall_ms\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.n,
            row.k,
            format_h(row.h),
            row.m,
            row.seed,
            row.best_total,
            row.iterations_used,
            row.wall_ms
        ));
    }
    fs::write(&args.out, &csv)?;
    println!(
        "wrote {} rows ({} instances x {} factors x {} seeds) to {}",
        rows.len(),
        set.len(),
        args.h_list.len(),
        args.seeds.len(),
        args.out.display()
    );

    if args.table {
        print_table(&rows, &args.h_list);
    }
    Ok(())
}

/// Text grid of best totals (minimum over seeds): one row per instance, one
/// column per factor.
fn print_table(rows: &[Row], h_list: &[HFactor]) {
    let mut ks: Vec<usize> = rows.iter().map(|row| row.k).collect();
    ks.sort_unstable();
    ks.dedup();

    let header: Vec<String> = h_list.iter().map(|&h| format!("h={}", format_h(h))).collect();
    println!("{:>6} {}", "k", header.join(" "));
    for &k in &ks {
        let mut line = format!("{k:>6}");
        for &h in h_list {
            let best = rows
                .iter()
                .filter(|row| row.k == k && row.h == h)
                .map(|row| row.best_total)
                .min();
            match best {
                Some(total) => line.push_str(&format!(" {total:>width$}", width = header_width(h))),
                None => line.push_str(&format!(" {:>width$}", "-", width = header_width(h))),
            }
        }
        println!("{line}");
    }
}

fn header_width(h: HFactor) -> usize {
    format!("h={}", format_h(h)).len()
}
