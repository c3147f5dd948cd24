//! Batch front-end: construct and validate maximal-class algebras, run
//! analyses, search centraliser sequences, and reproduce the named presets.
//!
//! Exit codes: 0 on success, 1 when a validation or expected check fails
//! (the report is still emitted), 2 on malformed input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gradedlie::json::{algebra_to_wire, parse_algebra, parse_job};
use gradedlie::maxclass::{search_sequences, CentraliserLine};
use gradedlie::presets::{expected_checks, preset_job, PRESET_NAMES};
use gradedlie::report::{render_text, run_analysis, AnalysisReport, Check};
use gradedlie::Error;

#[derive(Parser)]
#[command(
    name = "gradedlie",
    about = "maximal-class graded Lie algebra toolkit",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for any randomized enumeration.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra description from a JSON file.
    Validate { input: PathBuf },
    /// Run a full analysis job from a JSON file.
    Analyze { input: PathBuf },
    /// Enumerate valid centraliser sequences.
    Search {
        #[arg(long)]
        p: u64,
        /// Defining polynomial coefficients, low-to-high (default: the trivial
        /// extension E = F).
        #[arg(long, value_delimiter = ',', default_value = "0,1")]
        minpoly: Vec<u64>,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        max_centralisers: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Reproduce a named preset and check its expected outcome.
    Reproduce { name: String },
}

#[derive(Serialize)]
struct SearchReport {
    p: u64,
    minpoly: Vec<u64>,
    depth: usize,
    max_centralisers: usize,
    budget: u64,
    examined: u64,
    exhausted: bool,
    sequences: Vec<Vec<(Vec<u64>, Vec<u64>)>>,
}

#[derive(Serialize)]
struct ValidateReport {
    algebra: gradedlie::json::AlgebraWire,
    validation: gradedlie::maxclass::ValidationReport,
}

#[derive(Serialize)]
struct ReproduceReport {
    preset: String,
    #[serde(flatten)]
    analysis: AnalysisReport,
    expected: Vec<Check>,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: String) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json<T: Serialize>(cli: &Cli, value: &T) -> anyhow::Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    emit(cli, s)
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Validate { input } => {
            let text = fs::read_to_string(input)
                .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", input.display()))?;
            let mut algebra = parse_algebra(&text)?;
            let validation = algebra.validate();
            let ok = validation.ok;
            match cli.format {
                Format::Json => {
                    let report = ValidateReport {
                        algebra: algebra_to_wire(&algebra),
                        validation,
                    };
                    emit_json(cli, &report)?;
                }
                Format::Text => {
                    let mut out = String::new();
                    out.push_str(&format!(
                        "validation: {} ({} failures)\n",
                        if ok { "ok" } else { "FAILED" },
                        validation.failures.len()
                    ));
                    for f in &validation.failures {
                        out.push_str(&format!("  {f:?}\n"));
                    }
                    emit(cli, out)?;
                }
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Analyze { input } => {
            let text = fs::read_to_string(input)
                .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", input.display()))?;
            let mut job = parse_job(&text)?;
            if cli.seed != 0 {
                job.seed = cli.seed;
            }
            let report = run_analysis(&job)?;
            match cli.format {
                Format::Json => emit_json(cli, &report)?,
                Format::Text => emit(cli, render_text(&report))?,
            }
            Ok(if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Search {
            p,
            minpoly,
            depth,
            max_centralisers,
            budget,
        } => {
            let tower = gradedlie::fieldtower::FieldTower::finite(*p, minpoly)?;
            if !(1..=2).contains(max_centralisers) {
                return Err(Error::MalformedInput {
                    field: "max-centralisers".into(),
                    message: "must be 1 or 2".into(),
                }
                .into());
            }
            let outcome = search_sequences(&tower, *depth, *max_centralisers, *budget)?;
            let report = SearchReport {
                p: *p,
                minpoly: minpoly.clone(),
                depth: *depth,
                max_centralisers: *max_centralisers,
                budget: *budget,
                examined: outcome.examined,
                exhausted: outcome.exhausted,
                sequences: outcome
                    .sequences
                    .iter()
                    .map(|seq| {
                        seq.iter()
                            .map(|l| (l.a().coeffs().to_vec(), l.b().coeffs().to_vec()))
                            .collect()
                    })
                    .collect(),
            };
            match cli.format {
                Format::Json => emit_json(cli, &report)?,
                Format::Text => {
                    let mut out = String::new();
                    out.push_str(&format!(
                        "examined {} candidates, exhausted: {}\n",
                        report.examined, report.exhausted
                    ));
                    for seq in &outcome.sequences {
                        out.push_str(&format!("{}\n", render_sequence(seq)));
                    }
                    emit(cli, out)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reproduce { name } => {
            if !PRESET_NAMES.contains(&name.as_str()) {
                return Err(Error::UnknownPreset(name.clone()).into());
            }
            let job = preset_job(name, cli.seed)?;
            let analysis = run_analysis(&job)?;
            let expected = expected_checks(name, &analysis)?;
            let ok = analysis.ok && expected.iter().all(|c| c.pass);
            match cli.format {
                Format::Json => {
                    let report = ReproduceReport {
                        preset: name.clone(),
                        analysis,
                        expected,
                        ok,
                    };
                    emit_json(cli, &report)?;
                }
                Format::Text => {
                    let mut out = format!("preset: {name}\n");
                    out.push_str(&render_text(&analysis));
                    for check in &expected {
                        out.push_str(&format!(
                            "[{}] {} {}\n",
                            if check.pass { "PASS" } else { "FAIL" },
                            check.name,
                            check.detail
                        ));
                    }
                    out.push_str(&format!(
                        "preset result: {}\n",
                        if ok { "ok" } else { "FAILED" }
                    ));
                    emit(cli, out)?;
                }
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn render_sequence(seq: &[CentraliserLine]) -> String {
    let parts: Vec<String> = seq
        .iter()
        .map(|l| {
            format!(
                "[{}:{}]",
                render_coeffs(l.a().coeffs()),
                render_coeffs(l.b().coeffs())
            )
        })
        .collect();
    parts.join(" ")
}

fn render_coeffs(coeffs: &[u64]) -> String {
    coeffs
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join("")
}
