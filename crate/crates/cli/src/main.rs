//! `sumfree`: command-line driver.
//!
//! Exit codes: 0 success, 1 a finding (failed inequality, counterexample,
//! broken invariant), 2 bad input, usage or I/O errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::Rng;

use sumfree_core::adjudicate::{
    adjudicate, counterexample_search, theorem4_check, CounterexampleQuery, DEFAULT_SEARCH_CAP,
};
use sumfree_core::extremal::{rhemtulla_street_bound, tightness_instance};
use sumfree_core::integers::{column_hit_distribution, extract_with_mode, ColumnMode};
use sumfree_core::io::{
    parse_integers, to_json, write_findings_jsonl, write_inequality_csv, write_search_summary_csv,
    GroupDocument, IntegerWitnessRecord,
};
use sumfree_core::oracle::DEFAULT_EXACT_LIMIT;
use sumfree_core::scan::{
    full_scan, weighted_inequality_sweep, ScanMode, ScanOptions, DEFAULT_SCAN_CAP,
};
use sumfree_core::{seeded_rng, GroupSequence, GroupSpec};

#[derive(Parser)]
#[command(
    name = "sumfree",
    version,
    about = "Exact sum-free subset extraction and verification"
)]
struct Cli {
    /// Worker threads for scans and searches (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract a sum-free subset of size > n/3 from a file of nonzero integers.
    ExtractIntegers {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Sample this many multipliers instead of scanning all of them.
        #[arg(long, requires = "seed")]
        sample: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Also report how many multipliers give each hit count.
        #[arg(long)]
        distribution: bool,
    },
    /// Scan every multiplier vector for a group sequence.
    Scan {
        group: PathBuf,
        #[arg(long, conflicts_with = "sample")]
        exhaustive: bool,
        /// Evaluate this many random columns instead.
        #[arg(long, requires = "seed")]
        sample: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SCAN_CAP)]
        cap: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check 4/7 r1 + 3/7 r2 >= 2/7 for every n <= max-n and divisor d.
    Inequality {
        #[arg(long)]
        max_n: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compare the all-column mean with the n^s - 1 average.
    Adjudicate(AdjudicateArgs),
    /// Search multisets of nonzero elements for small sum-free maxima.
    Search(SearchArgs),
    /// The k p^(s-1) bound, with an oracle check for s = 1.
    Extremal {
        p: u64,
        s: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random checks of the prime-modulus chain of identities.
    Theorem4 {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct AdjudicateArgs {
    /// Group document; omit to draw random sequences instead.
    #[arg(required_unless_present = "n", conflicts_with_all = ["n", "s", "m", "count"])]
    group: Option<PathBuf>,
    #[arg(long, requires_all = ["s", "m", "seed"])]
    n: Option<u64>,
    #[arg(long)]
    s: Option<u32>,
    /// Maximum sequence length; lengths are drawn from 1..=m.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    s: u32,
    #[arg(long)]
    m: usize,
    #[arg(long, conflicts_with = "random")]
    exhaustive: bool,
    #[arg(long, requires_all = ["seed", "budget"])]
    random: bool,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
    cap: u64,
    /// Findings as JSON lines.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// One-row CSV summary.
    #[arg(long)]
    summary: Option<PathBuf>,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Clean,
    Finding,
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn finding_if(flag: bool) -> Outcome {
    if flag {
        Outcome::Finding
    } else {
        Outcome::Clean
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let threads = cli.threads;
    match cli.command {
        Command::ExtractIntegers {
            input,
            output,
            sample,
            seed,
            distribution,
        } => {
            let values = parse_integers(&read(&input)?)?;
            let mode = match (sample, seed) {
                (Some(samples), Some(seed)) => ColumnMode::Sampled { samples, seed },
                _ => ColumnMode::Exhaustive,
            };
            let extraction = extract_with_mode(&values, mode)?;
            let record = IntegerWitnessRecord::new(&values, &extraction);
            let text = if distribution {
                let dist = column_hit_distribution(&values, &extraction.choice)?;
                let mut json = serde_json::to_value(&record)?;
                json["column_hit_distribution"] = serde_json::to_value(dist)?;
                to_json(&json)?
            } else {
                to_json(&record)?
            };
            emit(output.as_deref(), &text)?;
            Ok(finding_if(!extraction.holds()))
        }
        Command::Scan {
            group,
            exhaustive: _,
            sample,
            seed,
            cap,
            output,
        } => {
            let seq = GroupDocument::parse(&read(&group)?)?.to_sequence()?;
            let mode = match (sample, seed) {
                (Some(samples), Some(seed)) => ScanMode::Sampled { samples, seed },
                _ => ScanMode::Exhaustive,
            };
            let report = full_scan(&seq, &ScanOptions { mode, threads, cap })?;
            emit(output.as_deref(), &to_json(&report)?)?;
            let broken = !report.extraction.verified || report.row_totals_match == Some(false);
            Ok(finding_if(broken))
        }
        Command::Inequality { max_n, output } => {
            let rows = weighted_inequality_sweep(max_n)?;
            let file = fs::File::create(&output)
                .with_context(|| format!("writing {}", output.display()))?;
            write_inequality_csv(&rows, file)?;
            let failures = rows.iter().filter(|r| !r.pass).count();
            eprintln!("{} rows, {failures} failing", rows.len());
            Ok(finding_if(failures > 0))
        }
        Command::Adjudicate(args) => run_adjudicate(args, threads),
        Command::Search(args) => run_search(args, threads),
        Command::Extremal { p, s, output } => {
            let bound = rhemtulla_street_bound(p, s)?;
            if s == 1 && (p - 1) as usize <= DEFAULT_EXACT_LIMIT {
                let (_, report) = tightness_instance(p)?;
                eprintln!(
                    "bound {}, oracle {}, {}",
                    report.bound,
                    report.oracle_max,
                    if report.matches_bound {
                        "match"
                    } else {
                        "MISMATCH"
                    }
                );
                emit(output.as_deref(), &to_json(&report)?)?;
                Ok(finding_if(!report.matches_bound))
            } else {
                eprintln!("bound {bound}, oracle not run");
                let json = serde_json::json!({ "p": p, "s": s, "bound": bound });
                emit(output.as_deref(), &to_json(&json)?)?;
                Ok(Outcome::Clean)
            }
        }
        Command::Theorem4 {
            p,
            s,
            trials,
            seed,
            output,
        } => {
            let summary = theorem4_check(p, s, trials, seed, threads)?;
            emit(output.as_deref(), &to_json(&summary)?)?;
            Ok(finding_if(!summary.holds()))
        }
    }
}

fn run_adjudicate(args: AdjudicateArgs, threads: usize) -> Result<Outcome> {
    let options = ScanOptions::with_threads(threads);
    let sequences: Vec<(String, GroupSequence)> = match (&args.group, args.n) {
        (Some(path), _) => {
            let seq = GroupDocument::parse(&read(path)?)?.to_sequence()?;
            vec![(path.display().to_string(), seq)]
        }
        (None, Some(n)) => {
            let (s, m, seed) = (
                args.s.context("--s is required")?,
                args.m.context("--m is required")?,
                args.seed.context("--seed is required")?,
            );
            anyhow::ensure!(m >= 1, "--m must be at least 1");
            let spec = GroupSpec::new(n, s)?;
            let mut rng = seeded_rng(seed);
            (0..args.count)
                .map(|i| {
                    let len = rng.gen_range(1..=m);
                    let elements = (0..len)
                        .map(|_| spec.decode(rng.gen_range(1..spec.cardinality())))
                        .collect();
                    Ok((
                        format!("seed{seed}-{i}"),
                        GroupSequence::new(spec, elements)?,
                    ))
                })
                .collect::<Result<_>>()?
        }
        (None, None) => anyhow::bail!("either a group file or --n/--s/--m/--seed is required"),
    };

    let mut text = String::new();
    let mut finding = false;
    for (id, seq) in &sequences {
        let record = adjudicate(id.clone(), seq, &options)?;
        let v = &record.verdicts;
        finding |= v.mean_equals_m1 && !v.exists_x_above_m1;
        if args.group.is_some() {
            text.push_str(&to_json(&record)?);
        } else {
            text.push_str(&serde_json::to_string(&record)?);
            text.push('\n');
        }
    }
    emit(args.output.as_deref(), &text)?;
    Ok(finding_if(finding))
}

fn run_search(args: SearchArgs, threads: usize) -> Result<Outcome> {
    let spec = GroupSpec::new(args.n, args.s)?;
    let mut query = if args.random {
        CounterexampleQuery::randomized(
            spec,
            args.m,
            args.budget.context("--budget is required")?,
            args.seed.context("--seed is required")?,
        )
    } else {
        let mut q = CounterexampleQuery::exhaustive(spec, args.m);
        if let Some(b) = args.budget {
            q.budget = b;
        }
        q
    };
    query.cap = args.cap;
    query.threads = threads;
    let outcome = counterexample_search(&query)?;

    let mut lines = Vec::new();
    write_findings_jsonl(&outcome.findings, &mut lines)?;
    emit(args.output.as_deref(), &String::from_utf8(lines)?)?;
    if let Some(path) = &args.summary {
        let file = fs::File::create(path).with_context(|| format!("writing {}", path.display()))?;
        write_search_summary_csv(&outcome.summary, file)?;
    }
    let s = &outcome.summary;
    eprintln!(
        "{} instances{}, {} theorem counterexamples, {} method failures",
        s.instances,
        if s.complete {
            ""
        } else {
            " (incomplete coverage)"
        },
        s.theorem_counterexamples,
        s.method_failures
    );
    Ok(finding_if(!outcome.findings.is_empty()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Finding) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
