//! The `dybe` command line: build and export objects, run verification
//! suites, and compare the Fateev–Zamolodchikov limit with the descendants.
//!
//! Exit codes: 0 when every verdict matches its expectation, 1 on a
//! verification failure, 2 on invalid input.

pub mod build;
pub mod export;
pub mod fz_compare;
pub mod suites;

use std::collections::hash_map::DefaultHasher;
use std::ffi::OsString;
use std::hash::{Hash, Hasher};
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use build::{build_record, group_order, BuildArgs, Format};
use export::{precision, ExportRecord};
use fz_compare::{fz_compare, FzOptions};
use suites::{paper_claims, run_suite, Line, Settings, Suite, CLAIMS};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Failed(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            Self::Input(_) => 2,
            Self::Failed(_) | Self::Io(_) => 1,
        }
    }

    /// Any library error, reported as bad input.
    pub fn input(e: dybe_core::Error) -> Self {
        Self::Input(e.to_string())
    }
}

impl From<dybe_core::Error> for CliError {
    fn from(e: dybe_core::Error) -> Self {
        match e {
            dybe_core::Error::Pole(_) | dybe_core::Error::NoConvergence(..) => Self::Failed(e.to_string()),
            e => Self::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "dybe", version, about = "R-matrices of Drinfeld doubles of dihedral groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an object and export its nonzero entries.
    Build(BuildArgs),
    /// Read an exported record and write it back out.
    Import(ImportArgs),
    /// Run a verification suite; JSON lines on stdout, a summary on stderr.
    Verify(VerifyArgs),
    /// Compare the Fateev–Zamolodchikov limit with the odd descendant.
    FzCompare(FzArgs),
}

#[derive(Clone, Debug, Args)]
pub struct ImportArgs {
    pub path: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub n: Option<u64>,
    /// `n = 2m`.
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long, default_value_t = 25)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "DYBE_PRECISION", default_value_t = 256)]
    pub precision: usize,
    /// Residual tolerance; defaults to 1e-30 at 256 bits, 1e-9 at 53.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Shift one coefficient of the descendant under test (fault injection).
    #[arg(long)]
    pub perturb: Option<f64>,
    /// Run the full grid of reproduced claims (suite `all` only).
    #[arg(long)]
    pub paper_claims: bool,
    /// Allow full-matrix YBE checks beyond d = 7.
    #[arg(long)]
    pub no_cap: bool,
}

#[derive(Clone, Debug, Args)]
pub struct FzArgs {
    /// Number of states, odd.
    #[arg(long = "N", short = 'N')]
    pub n: u64,
    #[arg(long, default_value_t = 5)]
    pub z_samples: usize,
    /// Values of `y` along `x = zy`.
    #[arg(long, value_delimiter = ',', default_value = "1e4,1e6,1e8")]
    pub schedule: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "DYBE_PRECISION", default_value_t = 256)]
    pub precision: usize,
}

/// Parses `args` and runs the command, returning the exit code.
pub fn main_with(
    args: impl IntoIterator<Item = impl Into<OsString> + Clone>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    match run(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

pub fn run(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Build(a) => {
            let record = build_record(a)?;
            emit(&record, a.format, a.out.as_ref(), out)?;
            writeln!(
                err,
                "{} {}: dim {}, {} nonzero entries",
                record.metadata.object,
                record.metadata.n,
                record.metadata.dim,
                record.entries.len()
            )?;
            Ok(0)
        }
        Command::Import(a) => {
            let text = std::fs::read_to_string(&a.path)?;
            let record = ExportRecord::from_json(&text)?;
            let op = record.to_operator()?;
            emit(&ExportRecord::new(record.metadata.clone(), &op), a.format, a.out.as_ref(), out)?;
            writeln!(err, "{}: dim {}, {} nonzero entries", a.path.display(), op.dim(), record.entries.len())?;
            Ok(0)
        }
        Command::Verify(a) => verify(a, out, err),
        Command::FzCompare(a) => {
            let opts = FzOptions {
                n: a.n,
                z_samples: a.z_samples,
                schedule: a.schedule.clone(),
                seed: a.seed,
                precision: precision(a.precision)?,
                require_transform: false,
            };
            let outcome = fz_compare(&opts)?;
            let lines: Vec<Line> = outcome
                .reports
                .iter()
                .cloned()
                .map(|report| Line { suite: "fz-compare".into(), claim: None, report })
                .collect();
            write_lines(&lines, out)?;
            summary(&lines, err)?;
            Ok(if outcome.succeeded() { 0 } else { 1 })
        }
    }
}

fn emit(record: &ExportRecord, format: Format, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<(), CliError> {
    let mut buf = Vec::new();
    match format {
        Format::Json => writeln!(buf, "{}", record.to_json())?,
        Format::Csv => record.write_csv(&mut buf)?,
    }
    match path {
        Some(p) => std::fs::write(p, buf)?,
        None => out.write_all(&buf)?,
    }
    Ok(())
}

fn verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let prec = precision(a.precision)?;
    let mut s = Settings::new(a.samples, a.seed, prec);
    if let Some(t) = a.tol {
        s.tolerance = t;
    }
    s.perturb = a.perturb;
    s.uncapped = a.no_cap;
    if a.samples == 0 {
        return Err(CliError::Input("--samples must be positive".into()));
    }
    let lines = if a.paper_claims {
        if a.suite != Suite::All || a.n.is_some() || a.m.is_some() {
            return Err(CliError::Input("--paper-claims runs its own grid: use `verify all --paper-claims`".into()));
        }
        paper_claims(&s)?
    } else if a.suite == Suite::All && a.n.is_none() && a.m.is_none() {
        let mut lines = run_suite(Suite::All, &s, 3)?;
        lines.extend(run_suite(Suite::All, &s, 4)?);
        lines
    } else {
        run_suite(a.suite, &s, group_order(a.n, a.m)?)?
    };
    write_lines(&lines, out)?;
    if a.paper_claims {
        claims_table(&lines, err)?;
    } else {
        summary(&lines, err)?;
    }
    Ok(if lines.iter().all(|l| l.report.as_expected()) { 0 } else { 1 })
}

fn write_lines(lines: &[Line], out: &mut dyn Write) -> Result<(), CliError> {
    for l in lines {
        writeln!(out, "{}", serde_json::to_string(l).expect("reports serialize"))?;
    }
    out.flush()?;
    Ok(())
}

fn status(l: &Line) -> &'static str {
    match (l.report.passed(), l.report.as_expected()) {
        (true, true) => "pass",
        (false, true) => "xfail",
        (true, false) => "XPASS",
        (false, false) => "FAIL",
    }
}

fn summary(lines: &[Line], err: &mut dyn Write) -> Result<(), CliError> {
    for l in lines {
        let r = &l.report;
        writeln!(
            err,
            "{:<6}{:<14}{:<30}max {:<10.2e}tol {:<8.0e}{:>8.2}s  {}",
            status(l),
            l.suite,
            r.identity,
            r.max_residual,
            r.tolerance,
            r.wall.as_secs_f64(),
            r.params
        )?;
    }
    let bad = lines.iter().filter(|l| !l.report.as_expected()).count();
    writeln!(err, "{} checks, {} unexpected", lines.len(), bad)?;
    Ok(())
}

/// One row per claim; the last row is a digest of the report stream to
/// compare across runs.
fn claims_table(lines: &[Line], err: &mut dyn Write) -> Result<(), CliError> {
    summary(lines, err)?;
    writeln!(err)?;
    writeln!(err, "{:<4}{:<8}{:<8}{:>9}  claim", "#", "result", "checks", "time")?;
    for c in CLAIMS.iter().filter(|c| c.id != 11) {
        let mine: Vec<&Line> = lines.iter().filter(|l| l.claim == Some(c.id)).collect();
        let ok = !mine.is_empty() && mine.iter().all(|l| l.report.as_expected());
        let wall: Duration = mine.iter().map(|l| l.report.wall).sum();
        writeln!(
            err,
            "{:<4}{:<8}{:<8}{:>8.1}s  {}",
            c.id,
            if ok { "ok" } else { "FAILED" },
            mine.len(),
            wall.as_secs_f64(),
            c.text
        )?;
    }
    let mut h = DefaultHasher::new();
    for l in lines {
        serde_json::to_string(l).expect("reports serialize").hash(&mut h);
    }
    writeln!(
        err,
        "{:<4}{:<8}{:<8}{:>9}  {} (digest {:016x}; compare across runs)",
        11,
        "-",
        lines.len(),
        "",
        CLAIMS[10].text,
        h.finish()
    )?;
    Ok(())
}
