//! Batch analysis over an enumerated or file-supplied corpus, written as
//! JSON lines in enumeration order by a single writer.

use std::collections::{BTreeMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use tracefield::analysis::{analyze, AnalysisConfig};
use tracefield::poly::IntPolynomial;
use tracefield::trace::ConjectureStatus;
use tracefield::Error;

use crate::exit;
use crate::parse::{parse_polynomial, require_monic_input};
use crate::report::FieldReport;

const CHUNK: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct HuntConfig {
    /// Inclusive degree range; empty when `min > max`.
    pub degree_min: usize,
    pub degree_max: usize,
    pub bound: u32,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub workers: usize,
    pub resume: bool,
    pub timing: bool,
    pub progress: bool,
    pub analysis: AnalysisConfig,
}

impl Default for HuntConfig {
    fn default() -> Self {
        HuntConfig {
            degree_min: 2,
            degree_max: 2,
            bound: 1,
            input: None,
            out: None,
            csv: None,
            workers: 1,
            resume: false,
            timing: false,
            progress: false,
            analysis: AnalysisConfig::default(),
        }
    }
}

impl HuntConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.degree_min < 2 && self.degree_min <= self.degree_max {
            return Err("degree must be at least 2".into());
        }
        if self.bound < 1 {
            return Err("bound must be at least 1".into());
        }
        if self.workers < 1 {
            return Err("workers must be at least 1".into());
        }
        Ok(())
    }
}

/// Parses `A..B`, `A..=B` (both inclusive) or a single degree `A`.
pub fn parse_degree_range(text: &str) -> Result<(usize, usize), String> {
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("invalid degree {s:?}"));
    if let Some((a, b)) = text.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        Ok((num(a)?, num(b)?))
    } else {
        let a = num(text)?;
        Ok((a, a))
    }
}

/// Monic polynomials of degree `n` with `|a_i| <= bound` and `a_0 != 0`,
/// lexicographic in `(a_{n-1}, ..., a_0)`.
pub fn enumerate(n: usize, bound: u32) -> impl Iterator<Item = IntPolynomial> {
    let b = bound as i64;
    let width = (2 * b + 1) as u64;
    let total = width.checked_pow(n as u32).expect("corpus size fits in u64");
    (0..total).filter_map(move |mut k| {
        // digits of k, most significant first, are a_{n-1}, ..., a_0
        let mut high_to_low = vec![0i64; n];
        for slot in high_to_low.iter_mut().rev() {
            *slot = (k % width) as i64 - b;
            k /= width;
        }
        if high_to_low[n - 1] == 0 {
            return None;
        }
        let mut coeffs: Vec<BigInt> = high_to_low.into_iter().rev().map(BigInt::from).collect();
        coeffs.push(BigInt::from(1));
        Some(IntPolynomial::new(coeffs))
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HuntSummary {
    pub statuses: BTreeMap<ConjectureStatus, usize>,
    pub reducible: usize,
    pub unknown: usize,
    pub resumed: usize,
    /// JSON lines of every counterexample report.
    pub counterexamples: Vec<String>,
}

impl HuntSummary {
    pub fn analyzed(&self) -> usize {
        self.statuses.values().sum()
    }

    fn record(&mut self, r: &FieldReport) {
        let status = r.status().expect("validated status");
        *self.statuses.entry(status).or_default() += 1;
        if status == ConjectureStatus::Counterexample {
            self.counterexamples.push(r.to_json_line());
        }
    }

    pub fn table(&self) -> String {
        let mut s = String::from("status                 count\n");
        for st in ConjectureStatus::ALL {
            s += &format!("{:<22} {}\n", st.as_str(), self.statuses.get(&st).copied().unwrap_or(0));
        }
        s += &format!("{:<22} {}\n", "analyzed", self.analyzed());
        s += &format!("{:<22} {}\n", "skipped_reducible", self.reducible);
        s += &format!("{:<22} {}\n", "skipped_unknown", self.unknown);
        s += &format!("{:<22} {}\n", "resumed", self.resumed);
        for c in &self.counterexamples {
            s += &format!("counterexample {c}\n");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuntError {
    pub code: i32,
    pub message: String,
}

impl HuntError {
    fn io(what: impl std::fmt::Display, e: std::io::Error) -> Self {
        HuntError { code: exit::IO, message: format!("{what}: {e}") }
    }
}

enum Outcome {
    Report(Box<FieldReport>),
    Reducible,
    Unknown,
    Fatal(i32, String),
}

fn run_one(f: &IntPolynomial, cfg: &HuntConfig) -> Outcome {
    let start = Instant::now();
    match analyze(f, &cfg.analysis) {
        Ok(a) => {
            let ms = cfg.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
            Outcome::Report(Box::new(FieldReport::from_analysis(&a, ms)))
        }
        Err(Error::Reducible { .. }) => Outcome::Reducible,
        Err(Error::IrreducibilityUnknown(_)) => Outcome::Unknown,
        Err(e @ (Error::TheoremViolation(_) | Error::Invariant(_))) => Outcome::Fatal(exit::VIOLATION, format!("{f}: {e}")),
        Err(e) => Outcome::Fatal(exit::UNKNOWN, format!("{f}: {e}")),
    }
}

fn read_input(cfg: &HuntConfig) -> Result<Vec<IntPolynomial>, HuntError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |f: IntPolynomial| {
        if seen.insert(f.clone()) {
            out.push(f);
        }
    };
    if let Some(path) = &cfg.input {
        let text = std::fs::read_to_string(path).map_err(|e| HuntError::io(path.display(), e))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |m: String| HuntError { code: exit::PARSE, message: format!("{}:{}: {m}", path.display(), i + 1) };
            let f = parse_polynomial(line).map_err(|e| bad(e.to_string()))?;
            require_monic_input(&f).map_err(bad)?;
            push(f);
        }
    } else {
        for n in cfg.degree_min..=cfg.degree_max {
            enumerate(n, cfg.bound).for_each(&mut push);
        }
    }
    Ok(out)
}

/// Loads previously written reports, dropping a trailing partial line.
fn load_existing(path: &PathBuf) -> Result<Vec<FieldReport>, HuntError> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(HuntError::io(path.display(), e)),
    };
    let complete = match text.rfind('\n') {
        Some(i) => &text[..=i],
        None => "",
    };
    if complete.len() != text.len() {
        let f = OpenOptions::new().write(true).open(path).map_err(|e| HuntError::io(path.display(), e))?;
        f.set_len(complete.len() as u64).map_err(|e| HuntError::io(path.display(), e))?;
    }
    complete
        .lines()
        .enumerate()
        .map(|(i, l)| {
            FieldReport::from_json(l).map_err(|m| HuntError {
                code: exit::PARSE,
                message: format!("{}:{}: {m}", path.display(), i + 1),
            })
        })
        .collect()
}

/// Runs the hunt; `log` receives progress lines when enabled.
pub fn hunt(cfg: &HuntConfig, stdout: &mut dyn Write, log: &mut dyn Write) -> Result<HuntSummary, HuntError> {
    cfg.validate().map_err(|m| HuntError { code: exit::PARSE, message: m })?;
    let inputs = read_input(cfg)?;
    let mut summary = HuntSummary::default();
    let mut all_reports: Vec<FieldReport> = Vec::new();

    let mut done: HashSet<String> = HashSet::new();
    if cfg.resume {
        if let Some(path) = &cfg.out {
            for r in load_existing(path)? {
                summary.record(&r);
                summary.resumed += 1;
                done.insert(r.polynomial.clone());
                all_reports.push(r);
            }
        }
    }
    let todo: Vec<IntPolynomial> = inputs.into_iter().filter(|f| !done.contains(&f.to_string())).collect();

    let mut file_writer;
    let writer: &mut dyn Write = match &cfg.out {
        Some(path) => {
            let f = if cfg.resume {
                OpenOptions::new().create(true).append(true).open(path)
            } else {
                File::create(path)
            }
            .map_err(|e| HuntError::io(path.display(), e))?;
            file_writer = BufWriter::new(f);
            &mut file_writer
        }
        None => stdout,
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| HuntError { code: exit::IO, message: e.to_string() })?;
    let total = todo.len();
    let io_err = |e| HuntError::io("output", e);
    for (ci, chunk) in todo.chunks(CHUNK).enumerate() {
        let outcomes: Vec<Outcome> = pool.install(|| chunk.par_iter().map(|f| run_one(f, cfg)).collect());
        for outcome in outcomes {
            match outcome {
                Outcome::Report(r) => {
                    writeln!(writer, "{}", r.to_json_line()).map_err(io_err)?;
                    summary.record(&r);
                    all_reports.push(*r);
                }
                Outcome::Reducible => summary.reducible += 1,
                Outcome::Unknown => summary.unknown += 1,
                Outcome::Fatal(code, message) => {
                    writer.flush().map_err(io_err)?;
                    return Err(HuntError { code, message });
                }
            }
        }
        writer.flush().map_err(io_err)?;
        if cfg.progress {
            let _ = writeln!(log, "progress {}/{}", (ci * CHUNK + chunk.len()).min(total), total);
        }
    }

    if let Some(path) = &cfg.csv {
        write_csv(path, &all_reports).map_err(|e| HuntError { code: exit::IO, message: format!("{}: {e}", path.display()) })?;
    }
    Ok(summary)
}

fn write_csv(path: &PathBuf, reports: &[FieldReport]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["poly", "n", "d_K", "t", "tame", "thm4", "status"])?;
    for r in reports {
        w.write_record([
            r.polynomial.clone(),
            r.degree.to_string(),
            r.d_k.0.to_string(),
            r.t.0.to_string(),
            r.tame.to_string(),
            r.criteria.thm4.to_string(),
            r.conjecture_status.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
