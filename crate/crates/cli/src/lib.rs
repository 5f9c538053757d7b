//! `tracefield` command-line driver.

pub mod config;
pub mod hunt;
pub mod oracle;
pub mod parse;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use tracefield::analysis::{analyze, AnalysisConfig};
use tracefield::arith::FactorConfig;
use tracefield::poly::IrreducibilityConfig;
use tracefield::Error;

use crate::config::FileConfig;
use crate::hunt::{hunt, parse_degree_range, HuntConfig};
use crate::parse::{parse_polynomial, require_monic_input};
use crate::report::FieldReport;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 1;
    pub const REDUCIBLE: i32 = 2;
    pub const UNKNOWN: i32 = 3;
    pub const IO: i32 = 4;
    pub const VIOLATION: i32 = 5;
    pub const MISMATCH: i32 = 6;
}

#[derive(Debug, Parser)]
#[command(name = "tracefield", version, about = "Rings of integers, ramification and trace surjectivity of number fields")]
struct Cli {
    /// Settings file with key = value lines
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze one field given by a monic polynomial
    Analyze {
        /// `x^3+x-6` or `[1, 0, 1, -6]` (leading coefficient first)
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Print the report as one JSON document
        #[arg(long)]
        json: bool,
        /// Include wall-clock timing in the report
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Analyze a corpus and write one JSON report per line
    Hunt {
        /// Inclusive degree range, e.g. 3..4
        #[arg(long)]
        degree: Option<String>,
        /// Coefficient bound |a_i| <= C
        #[arg(long)]
        bound: Option<u32>,
        /// Polynomials to analyze, one per line, instead of enumeration
        #[arg(long)]
        input: Option<PathBuf>,
        /// JSONL output file (default: standard output)
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV summary file
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Skip polynomials already present in the output file
        #[arg(long)]
        resume: bool,
        #[arg(long)]
        timing: bool,
        /// Report progress on standard error
        #[arg(long)]
        progress: bool,
    },
    /// Compare reports against reference data from another system
    OracleDiff { reports: PathBuf, oracle: PathBuf },
}

fn analysis_config(file: &FileConfig, seed: Option<u64>) -> AnalysisConfig {
    let mut cfg = AnalysisConfig {
        factor: FactorConfig::default(),
        irreducibility: IrreducibilityConfig::default(),
        seed: 0,
    };
    if let Some(b) = file.factor_bound {
        cfg.factor.trial_bound = b;
    }
    if let Some(w) = file.witness_primes {
        cfg.irreducibility.witness_primes = w;
    }
    if let Some(r) = file.recombination_budget {
        cfg.irreducibility.recombination_budget = r;
    }
    cfg.seed = seed.or(file.seed).unwrap_or(0);
    cfg
}

/// Runs the CLI with explicit streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let text = e.render().to_string();
            if code == exit::OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let file = match &cli.config {
        Some(path) => match FileConfig::load(path) {
            Ok(f) => f,
            Err(m) => {
                let _ = writeln!(err, "error: config {m}");
                return exit::PARSE;
            }
        },
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Analyze { poly, json, timing, seed } => cmd_analyze(&poly, json, timing, &analysis_config(&file, seed), out, err),
        Command::Hunt { degree, bound, input, out: out_path, csv, workers, seed, resume, timing, progress } => {
            let (degree_min, degree_max) = match (&degree, &input) {
                (Some(d), _) => match parse_degree_range(d) {
                    Ok(r) => r,
                    Err(m) => {
                        let _ = writeln!(err, "error: --degree: {m}");
                        return exit::PARSE;
                    }
                },
                (None, Some(_)) => (2, 2),
                (None, None) => {
                    let _ = writeln!(err, "error: hunt needs --degree and --bound, or --input");
                    return exit::PARSE;
                }
            };
            if input.is_none() && bound.is_none() {
                let _ = writeln!(err, "error: hunt needs --bound when enumerating");
                return exit::PARSE;
            }
            let cfg = HuntConfig {
                degree_min,
                degree_max,
                bound: bound.unwrap_or(1),
                input,
                out: out_path,
                csv,
                workers: workers.or(file.workers).unwrap_or(1),
                resume,
                timing,
                progress,
                analysis: analysis_config(&file, seed),
            };
            match hunt(&cfg, out, err) {
                Ok(summary) => {
                    let text = summary.table();
                    if cfg.out.is_some() {
                        let _ = write!(out, "{text}");
                    } else {
                        let _ = write!(err, "{text}");
                    }
                    exit::OK
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {}", e.message);
                    e.code
                }
            }
        }
        Command::OracleDiff { reports, oracle } => cmd_oracle_diff(&reports, &oracle, out, err),
    }
}

fn caret(text: &str, column: usize) -> String {
    format!("  {text}\n  {}^", " ".repeat(column.saturating_sub(1)))
}

fn cmd_analyze(text: &str, json: bool, timing: bool, cfg: &AnalysisConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let f = match parse_polynomial(text) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {e}\n{}", caret(text, e.column));
            return exit::PARSE;
        }
    };
    if let Err(m) = require_monic_input(&f) {
        let _ = writeln!(err, "error: {m}");
        return exit::PARSE;
    }
    let start = Instant::now();
    let analysis = match analyze(&f, cfg) {
        Ok(a) => a,
        Err(Error::Reducible { factor }) => {
            let _ = writeln!(err, "{f} is reducible over Q: factor {factor}");
            return exit::REDUCIBLE;
        }
        Err(Error::IrreducibilityUnknown(_)) => {
            let _ = writeln!(err, "irreducibility of {f} is unknown within the effort budget");
            return exit::UNKNOWN;
        }
        Err(e @ (Error::TheoremViolation(_) | Error::Invariant(_))) => {
            let _ = writeln!(err, "fatal: {e}");
            return exit::VIOLATION;
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit::UNKNOWN;
        }
    };
    let ms = timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let report = FieldReport::from_analysis(&analysis, ms);
    let _ = if json {
        writeln!(out, "{}", report.to_json_line())
    } else {
        write!(out, "{}", report.to_text())
    };
    exit::OK
}

fn cmd_oracle_diff(reports: &PathBuf, oracle: &PathBuf, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let read = |p: &PathBuf| std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()));
    let (rtext, otext) = match (read(reports), read(oracle)) {
        (Ok(r), Ok(o)) => (r, o),
        (Err(m), _) | (_, Err(m)) => {
            let _ = writeln!(err, "error: {m}");
            return exit::IO;
        }
    };
    let mut local = Vec::new();
    for (i, line) in rtext.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        match FieldReport::from_json(line) {
            Ok(r) => local.push(r),
            Err(m) => {
                let _ = writeln!(err, "error: {}:{}: {m}", reports.display(), i + 1);
                return exit::PARSE;
            }
        }
    }
    let entries = match oracle::parse_oracle(&otext) {
        Ok(e) => e,
        Err(m) => {
            let _ = writeln!(err, "error: {}: {m}", oracle.display());
            return exit::PARSE;
        }
    };
    let d = oracle::diff(&local, &entries);
    for m in &d.mismatches {
        let _ = writeln!(out, "mismatch {m}");
    }
    for g in &d.gaps {
        let _ = writeln!(out, "gap {g}");
    }
    let _ = writeln!(
        out,
        "compared {} mismatches {} gaps {} unused_oracle_entries {}",
        d.compared,
        d.mismatches.len(),
        d.gaps.len(),
        d.unused
    );
    if d.is_clean() {
        exit::OK
    } else {
        exit::MISMATCH
    }
}
