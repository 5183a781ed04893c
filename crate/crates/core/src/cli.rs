//! Command-line front end.
//!
//! Subcommands: `exact`, `prob`, `table`, `sample`, `verify` and `mc`. Exit
//! codes are 0 on success, 1 on a domain error or failed verification, and 2
//! on a usage error. Rationals are always written as `p/q` strings; the
//! `decimal` fields carry a 30-significant-digit rendering for reading.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::closedform::{self, ClassQuery, PrecedenceQuery};
use crate::montecarlo::{self, Estimate};
use crate::oracle;
use crate::rational::{to_decimal, ExactRational, DECIMAL_DIGITS};
use crate::sampler::{sample_class, sample_uniform, RngState};
use crate::Error;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, Parser)]
#[command(
    name = "fpinv",
    version,
    about = "Inversions in random permutations with k fixed points"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write results to PATH instead of standard output.
    #[arg(long = "out", value_name = "PATH", global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Exact expected number of inversions in D(n;k).
    Exact(ClassArgs),
    /// Exact probability that value i precedes value j in D(n;k).
    Prob(PairArgs),
    /// Main term, correction and exact expectation over ranges of n and k.
    Table(TableArgs),
    /// Draw permutations, uniformly from S_n or from D(n;k).
    Sample(SampleArgs),
    /// Compare every closed form against exhaustive enumeration.
    Verify(VerifyArgs),
    /// Monte Carlo estimate with standard error, next to the exact value.
    Mc(McArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ClassArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub j: usize,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// A single size or an inclusive range `LO-HI` / `LO..=HI`.
    #[arg(long, value_parser = parse_range)]
    pub n: (usize, usize),
    /// A single count or an inclusive range; rows with k > n or k = n - 1 are skipped.
    #[arg(long, value_parser = parse_range)]
    pub k: (usize, usize),
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    /// Fixed-point count; uniform over all of S_n when omitted.
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of permutations to draw.
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    /// Decimal or 0x-prefixed hexadecimal.
    #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long = "max-n", default_value_t = 8)]
    pub max_n: usize,
}

#[derive(Debug, Clone, Args)]
pub struct McArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// With --j, estimate the precedence probability instead of the expectation.
    #[arg(long, requires = "j")]
    pub i: Option<usize>,
    #[arg(long, requires = "i")]
    pub j: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    /// Decimal or 0x-prefixed hexadecimal.
    #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

/// Parses a 64-bit seed written in decimal or as `0x...` hexadecimal.
pub fn parse_seed(text: &str) -> Result<u64, String> {
    let text = text.trim();
    let parsed = match text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => text.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("invalid seed {text:?}: {e}"))
}

fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|e| format!("invalid bound {s:?}: {e}"))
    };
    let (lo, hi) = match text.split_once("..=").or_else(|| text.split_once('-')) {
        Some((lo, hi)) => (parse(lo)?, parse(hi)?),
        None => {
            let v = parse(text)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {text:?}"));
    }
    Ok((lo, hi))
}

/// Failure of a CLI run.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] Error),
    #[error("verification failed: {mismatches} of {comparisons} comparisons differ")]
    Verification {
        mismatches: usize,
        comparisons: usize,
    },
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Library(e) => e.code(),
            CliError::Verification { .. } => "VerificationFailed",
            CliError::Io(_) => "IoError",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Formula,
    Oracle,
    Montecarlo,
}

impl Source {
    fn as_str(self) -> &'static str {
        match self {
            Source::Formula => "formula",
            Source::Oracle => "oracle",
            Source::Montecarlo => "montecarlo",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Query {
    ExpectedInversions {
        n: usize,
        k: usize,
    },
    Precedence {
        n: usize,
        k: usize,
        i: usize,
        j: usize,
    },
    Sample {
        n: usize,
        k: Option<usize>,
        seed: u64,
        index: u64,
    },
    Verify {
        max_n: usize,
    },
}

#[derive(Debug, Serialize)]
struct ValueRecord {
    query: Query,
    value_rational: String,
    value_decimal: String,
    source: Source,
}

#[derive(Debug, Serialize)]
struct TableRecord {
    query: Query,
    main: Option<String>,
    correction: Option<String>,
    value_rational: String,
    value_decimal: String,
    source: Source,
}

#[derive(Debug, Serialize)]
struct SampleRecord {
    query: Query,
    permutation: String,
    inversions: u64,
    fixed_points: usize,
}

#[derive(Debug, Serialize)]
struct EstimateRecord {
    query: Query,
    mean: f64,
    std_error: f64,
    trials: u64,
    seed: u64,
    z_score: Option<f64>,
    value_rational: Option<String>,
    value_decimal: Option<String>,
    source: Source,
}

#[derive(Debug, Serialize)]
struct Mismatch {
    n: usize,
    k: usize,
    i: Option<usize>,
    j: Option<usize>,
    formula: String,
    oracle: String,
}

#[derive(Debug, Serialize)]
struct VerifyRecord {
    query: Query,
    comparisons: usize,
    mismatches: Vec<Mismatch>,
}

#[derive(Debug, Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: String,
}

#[derive(Debug, Serialize)]
struct ErrorRecord<'a> {
    error: ErrorBody<'a>,
}

fn decimal(value: &ExactRational) -> String {
    to_decimal(value, DECIMAL_DIGITS)
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn write_json<T: Serialize>(out: &mut dyn Write, record: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, record)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Exact expected inversions, routed to the oracle below `n = 3`.
fn expected_value(n: usize, k: usize) -> Result<(ExactRational, Source), Error> {
    if n < 3 {
        return Ok((
            oracle::oracle_expected_inversions(n, k)?.expected_inversions,
            Source::Oracle,
        ));
    }
    Ok((
        closedform::expected_inversions(&ClassQuery::new(n, k)?)?,
        Source::Formula,
    ))
}

fn precedence_value(
    n: usize,
    k: usize,
    i: usize,
    j: usize,
) -> Result<(ExactRational, Source), Error> {
    if n < 3 {
        return Ok((oracle::oracle_precedence(n, k, i, j)?, Source::Oracle));
    }
    let q = PrecedenceQuery::new(ClassQuery::new(n, k)?, i, j)?;
    Ok((closedform::precedence_probability(&q)?, Source::Formula))
}

fn emit_value(out: &mut dyn Write, format: Format, record: ValueRecord) -> Result<(), CliError> {
    match format {
        Format::Json => write_json(out, &record)?,
        Format::Text => {
            let query = match record.query {
                Query::ExpectedInversions { n, k } => format!("E[inversions] n={n} k={k}"),
                Query::Precedence { n, k, i, j } => format!("P({i} before {j}) n={n} k={k}"),
                _ => unreachable!("value records carry class or pair queries"),
            };
            writeln!(out, "query: {query}")?;
            writeln!(out, "value: {}", record.value_rational)?;
            writeln!(out, "decimal: {}", record.value_decimal)?;
            writeln!(out, "source: {}", record.source.as_str())?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            match record.query {
                Query::ExpectedInversions { n, k } => {
                    w.write_record(["n", "k", "value_rational", "value_decimal", "source"])?;
                    w.write_record([
                        n.to_string(),
                        k.to_string(),
                        record.value_rational,
                        record.value_decimal,
                        record.source.as_str().into(),
                    ])?;
                }
                Query::Precedence { n, k, i, j } => {
                    w.write_record([
                        "n",
                        "k",
                        "i",
                        "j",
                        "value_rational",
                        "value_decimal",
                        "source",
                    ])?;
                    w.write_record([
                        n.to_string(),
                        k.to_string(),
                        i.to_string(),
                        j.to_string(),
                        record.value_rational,
                        record.value_decimal,
                        record.source.as_str().into(),
                    ])?;
                }
                _ => unreachable!("value records carry class or pair queries"),
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn run_exact(args: &ClassArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let (value, source) = expected_value(args.n, args.k)?;
    let record = ValueRecord {
        query: Query::ExpectedInversions {
            n: args.n,
            k: args.k,
        },
        value_decimal: decimal(&value),
        value_rational: value.to_string(),
        source,
    };
    emit_value(out, format, record)
}

fn run_prob(args: &PairArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let (value, source) = precedence_value(args.n, args.k, args.i, args.j)?;
    let record = ValueRecord {
        query: Query::Precedence {
            n: args.n,
            k: args.k,
            i: args.i,
            j: args.j,
        },
        value_decimal: decimal(&value),
        value_rational: value.to_string(),
        source,
    };
    emit_value(out, format, record)
}

/// Header of the `table` CSV output.
pub const TABLE_HEADER: [&str; 6] = ["n", "k", "main", "correction", "exact", "decimal"];

fn table_rows(args: &TableArgs) -> Result<Vec<TableRecord>, CliError> {
    let (n_lo, n_hi) = args.n;
    let (k_lo, k_hi) = args.k;
    if n_lo == 0 {
        return Err(CliError::Usage("table requires n >= 1".into()));
    }
    let mut rows = Vec::new();
    for n in n_lo..=n_hi {
        for k in k_lo..=k_hi.min(n) {
            if k + 1 == n {
                continue;
            }
            let (exact, source) = expected_value(n, k)?;
            let (main, correction) = if n >= 3 {
                let q = ClassQuery::new(n, k)?;
                (
                    Some(closedform::expected_inversions_main(&q)?.to_string()),
                    Some(closedform::inversion_correction(&q)?.to_string()),
                )
            } else {
                (None, None)
            };
            rows.push(TableRecord {
                query: Query::ExpectedInversions { n, k },
                main,
                correction,
                value_decimal: decimal(&exact),
                value_rational: exact.to_string(),
                source,
            });
        }
    }
    Ok(rows)
}

fn run_table(args: &TableArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = table_rows(args)?;
    let fields = |r: &TableRecord| -> [String; 6] {
        let Query::ExpectedInversions { n, k } = r.query else {
            unreachable!()
        };
        [
            n.to_string(),
            k.to_string(),
            r.main.clone().unwrap_or_default(),
            r.correction.clone().unwrap_or_default(),
            r.value_rational.clone(),
            r.value_decimal.clone(),
        ]
    };
    match format {
        Format::Json => {
            for r in &rows {
                write_json(out, r)?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(TABLE_HEADER)?;
            for r in &rows {
                w.write_record(fields(r))?;
            }
            w.flush()?;
        }
        Format::Text => {
            let cells: Vec<[String; 6]> = rows.iter().map(fields).collect();
            let mut widths = TABLE_HEADER.map(str::len);
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |row: &[String]| {
                row.iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(&TABLE_HEADER.map(String::from)))?;
            for row in &cells {
                writeln!(out, "{}", line(row))?;
            }
        }
    }
    Ok(())
}

fn run_sample(args: &SampleArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let mut rng = RngState::new(args.seed);
    let mut records = Vec::new();
    for index in 0..args.trials {
        let p = match args.k {
            Some(k) => sample_class(args.n, k, &mut rng)?,
            None => sample_uniform(args.n, &mut rng)?,
        };
        records.push(SampleRecord {
            query: Query::Sample {
                n: args.n,
                k: args.k,
                seed: args.seed,
                index,
            },
            permutation: p.to_string(),
            inversions: p.inversions(),
            fixed_points: p.fixed_point_count(),
        });
    }
    match format {
        Format::Json => {
            for r in &records {
                write_json(out, r)?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["index", "permutation", "inversions", "fixed_points"])?;
            for r in records {
                let Query::Sample { index, .. } = r.query else {
                    unreachable!()
                };
                w.write_record([
                    index.to_string(),
                    r.permutation,
                    r.inversions.to_string(),
                    r.fixed_points.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in &records {
                writeln!(out, "{}", r.permutation)?;
            }
        }
    }
    Ok(())
}

fn verify_records(max_n: usize) -> Result<(usize, Vec<Mismatch>), CliError> {
    if max_n > oracle::MAX_ENUMERATION_N {
        return Err(Error::SizeCap {
            n: max_n,
            cap: oracle::MAX_ENUMERATION_N,
        }
        .into());
    }
    let mut comparisons = 0;
    let mut mismatches = Vec::new();
    for n in 3..=max_n {
        for k in (0..=n).filter(|&k| k + 1 != n) {
            let class = ClassQuery::new(n, k)?;
            let formula = closedform::expected_inversions(&class)?;
            let truth = oracle::oracle_expected_inversions(n, k)?.expected_inversions;
            comparisons += 1;
            if formula != truth {
                mismatches.push(Mismatch {
                    n,
                    k,
                    i: None,
                    j: None,
                    formula: formula.to_string(),
                    oracle: truth.to_string(),
                });
            }
            let table = oracle::oracle_precedence_table(n, k)?;
            for i in 1..=n {
                for j in i + 1..=n {
                    let formula =
                        closedform::precedence_probability(&PrecedenceQuery::new(class, i, j)?)?;
                    let truth = table.probability(i, j)?;
                    comparisons += 1;
                    if formula != truth {
                        mismatches.push(Mismatch {
                            n,
                            k,
                            i: Some(i),
                            j: Some(j),
                            formula: formula.to_string(),
                            oracle: truth.to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok((comparisons, mismatches))
}

fn run_verify(args: &VerifyArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let (comparisons, mismatches) = verify_records(args.max_n)?;
    let failed = mismatches.len();
    let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    match format {
        Format::Json => write_json(
            out,
            &VerifyRecord {
                query: Query::Verify { max_n: args.max_n },
                comparisons,
                mismatches,
            },
        )?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "k", "i", "j", "formula", "oracle"])?;
            for m in &mismatches {
                w.write_record([
                    m.n.to_string(),
                    m.k.to_string(),
                    opt(m.i),
                    opt(m.j),
                    m.formula.clone(),
                    m.oracle.clone(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for m in &mismatches {
                writeln!(
                    out,
                    "MISMATCH (n={}, k={}, i={}, j={}): formula {} vs oracle {}",
                    m.n,
                    m.k,
                    opt(m.i),
                    opt(m.j),
                    m.formula,
                    m.oracle
                )?;
            }
            writeln!(
                out,
                "verified n=3..={}: {comparisons} comparisons, {failed} mismatches",
                args.max_n
            )?;
        }
    }
    if failed > 0 {
        return Err(CliError::Verification {
            mismatches: failed,
            comparisons,
        });
    }
    Ok(())
}

fn run_mc(args: &McArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let (query, estimate): (Query, Estimate) = match (args.i, args.j) {
        (Some(i), Some(j)) => (
            Query::Precedence {
                n: args.n,
                k: args.k,
                i,
                j,
            },
            montecarlo::estimate_precedence(args.n, args.k, i, j, args.trials, args.seed)?,
        ),
        (None, None) => (
            Query::ExpectedInversions {
                n: args.n,
                k: args.k,
            },
            montecarlo::estimate_expected_inversions(args.n, args.k, args.trials, args.seed)?,
        ),
        _ => return Err(CliError::Usage("--i and --j must be given together".into())),
    };
    let record = EstimateRecord {
        query,
        mean: estimate.mean,
        std_error: estimate.std_error,
        trials: estimate.trials,
        seed: estimate.seed,
        z_score: estimate.z_score(),
        value_rational: estimate.target.as_ref().map(ToString::to_string),
        value_decimal: estimate.target.as_ref().map(decimal),
        source: Source::Montecarlo,
    };
    let opt = |x: &Option<String>| x.clone().unwrap_or_default();
    match format {
        Format::Json => write_json(out, &record)?,
        Format::Csv => {
            let (i, j) = match record.query {
                Query::Precedence { i, j, .. } => (i.to_string(), j.to_string()),
                _ => (String::new(), String::new()),
            };
            let mut w = csv_writer(out);
            w.write_record([
                "n",
                "k",
                "i",
                "j",
                "mean",
                "std_error",
                "trials",
                "seed",
                "value_rational",
                "value_decimal",
                "z_score",
            ])?;
            w.write_record([
                args.n.to_string(),
                args.k.to_string(),
                i,
                j,
                record.mean.to_string(),
                record.std_error.to_string(),
                record.trials.to_string(),
                record.seed.to_string(),
                opt(&record.value_rational),
                opt(&record.value_decimal),
                record.z_score.map(|z| z.to_string()).unwrap_or_default(),
            ])?;
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "mean: {}", record.mean)?;
            writeln!(out, "std_error: {}", record.std_error)?;
            writeln!(out, "trials: {}", record.trials)?;
            writeln!(out, "seed: {}", record.seed)?;
            writeln!(out, "exact: {}", opt(&record.value_rational))?;
            writeln!(out, "exact_decimal: {}", opt(&record.value_decimal))?;
            if let Some(z) = record.z_score {
                writeln!(out, "z_score: {z}")?;
            }
        }
    }
    Ok(())
}

/// Executes a parsed configuration, writing results to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let format = config.format;
    match &config.command {
        Command::Exact(a) => run_exact(a, format, out),
        Command::Prob(a) => run_prob(a, format, out),
        Command::Table(a) => run_table(a, format, out),
        Command::Sample(a) => run_sample(a, format, out),
        Command::Verify(a) => run_verify(a, format, out),
        Command::Mc(a) => run_mc(a, format, out),
    }
}

fn report_error(
    config: Option<&RunConfig>,
    err: &CliError,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) {
    let _ = writeln!(stderr, "error[{}]: {err}", err.code());
    if config.is_some_and(|c| c.format == Format::Json) {
        let record = ErrorRecord {
            error: ErrorBody {
                code: err.code(),
                message: err.to_string(),
            },
        };
        let _ = write_json(stdout, &record);
    }
}

/// Parses `args` (program name first), runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match &config.output {
        Some(path) => File::create(path).map_err(CliError::from).and_then(|f| {
            let mut w = BufWriter::new(f);
            run(&config, &mut w)?;
            w.flush()?;
            Ok(())
        }),
        None => run(&config, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(err) => {
            report_error(Some(&config), &err, stdout, stderr);
            err.exit_code()
        }
    }
}
