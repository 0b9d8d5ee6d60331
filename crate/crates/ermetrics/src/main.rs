use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use ermetrics::io::{parse_clustering_file, write_clustering_file, Format};
use ermetrics::{
    evaluate, parse_metric_list, perturb, rank_compare, random_partition, Candidate, EvalOptions,
    HarnessError, Metric, OpMix, SizeProfile,
};
use ermetrics_core::{CostFamily, GmdConfig, UniversePolicy};

/// Exit status when some requested metric could not be computed.
const EXIT_UNAVAILABLE: u8 = 1;
/// Exit status for unreadable input, bad arguments and universe mismatches.
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "ermetrics", version, about = "Evaluate entity-resolution clusterings against a gold standard")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum SummaryFormat {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Score a predicted clustering against a gold clustering.
    Eval {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        /// Input format; inferred from the file extension when omitted.
        #[arg(long)]
        format: Option<Format>,
        /// Comma-separated metric names, group names, or `all`.
        #[arg(long, default_value = "all")]
        metrics: String,
        #[arg(long, default_value = "strict")]
        universe: UniversePolicy,
        /// V-measure weight.
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        /// Split cost: constant:k, product:k, affine:k1,k2 or vi.
        #[arg(long, default_value = "product:1")]
        gmd_split: CostFamily,
        /// Merge cost, same syntax as --gmd-split.
        #[arg(long, default_value = "product:1")]
        gmd_merge: CostFamily,
        #[arg(long, value_enum, default_value = "json")]
        out: ReportFormat,
    },
    /// Apply seeded random split/merge/move operations to a clustering.
    Perturb {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        ops: usize,
        /// Relative weights, e.g. split:1,merge:1,move:0.
        #[arg(long, default_value = "split:1,merge:1,move:1")]
        mix: OpMix,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output clustering; format follows the extension.
        #[arg(long)]
        out: PathBuf,
        /// Where to write the JSON operation log.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Rank candidate clusterings under several metrics and report disagreements.
    RankCompare {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long, num_args = 2.., required = true)]
        candidates: Vec<PathBuf>,
        #[arg(long, default_value = "all")]
        metrics: String,
        #[arg(long, default_value = "strict")]
        universe: UniversePolicy,
        #[arg(long, value_enum, default_value = "json")]
        out: SummaryFormat,
    },
    /// Write a seeded synthetic clustering.
    Generate {
        #[arg(long)]
        n: u64,
        /// uniform:k, zipf:s or singleton-heavy.
        #[arg(long, default_value = "zipf:2")]
        profile: SizeProfile,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn metric_list(list: &str) -> Result<Vec<Metric>, HarnessError> {
    parse_metric_list(list).map_err(HarnessError::InvalidArgument)
}

fn write_text(path: &Path, text: &str) -> Result<(), HarnessError> {
    fs::write(path, text).map_err(|source| HarnessError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Candidate names are file stems, falling back to the full path when
/// stems collide.
fn candidate_names(paths: &[PathBuf]) -> Vec<String> {
    let stems: Vec<String> = paths
        .iter()
        .map(|p| {
            p.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string())
        })
        .collect();
    stems
        .iter()
        .zip(paths)
        .map(|(stem, path)| {
            if stems.iter().filter(|s| *s == stem).count() > 1 {
                path.display().to_string()
            } else {
                stem.clone()
            }
        })
        .collect()
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Eval {
            pred,
            gold,
            format,
            metrics,
            universe,
            beta,
            gmd_split,
            gmd_merge,
            out,
        } => {
            let options = EvalOptions {
                metrics: metric_list(&metrics)?,
                universe,
                beta,
                gmd: GmdConfig::new(gmd_split, gmd_merge),
            };
            let pred = parse_clustering_file(&pred, format)?;
            let gold = parse_clustering_file(&gold, format)?;
            let report = evaluate(&pred, &gold, &options)?;
            let text = match out {
                ReportFormat::Json => report.to_json(),
                ReportFormat::Csv => report.to_csv(),
                ReportFormat::Table => report.to_table(),
            };
            print!("{text}");
            for flag in report.flags.iter() {
                eprintln!("note: {}: {}", flag.metric, flag.detail);
            }
            Ok(if report.has_unavailable() { EXIT_UNAVAILABLE } else { 0 })
        }
        Command::Perturb {
            input,
            ops,
            mix,
            seed,
            out,
            log,
        } => {
            let source = parse_clustering_file(&input, None)?;
            let (result, mut record) = perturb(&source, ops, &mix, seed)?;
            write_clustering_file(&out, &result, None)?;
            if let Some(log) = log {
                record.result = Some(out.display().to_string());
                let text = serde_json::to_string_pretty(&record).context("serializing the log")?;
                write_text(&log, &(text + "\n"))?;
            }
            Ok(0)
        }
        Command::RankCompare {
            gold,
            candidates,
            metrics,
            universe,
            out,
        } => {
            let options = EvalOptions {
                metrics: metric_list(&metrics)?,
                universe,
                ..EvalOptions::default()
            };
            let gold = parse_clustering_file(&gold, None)?;
            let names = candidate_names(&candidates);
            let candidates = candidates
                .iter()
                .zip(names)
                .map(|(path, name)| {
                    Ok(Candidate {
                        name,
                        clustering: parse_clustering_file(path, None)?,
                    })
                })
                .collect::<Result<Vec<_>, HarnessError>>()?;
            let summary = rank_compare(&gold, &candidates, &options)?;
            match out {
                SummaryFormat::Json => print!("{}", summary.to_json()),
                SummaryFormat::Table => print!("{}", summary.to_table()),
            }
            Ok(0)
        }
        Command::Generate { n, profile, seed, out } => {
            write_clustering_file(&out, &random_partition(n, profile, seed), None)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
