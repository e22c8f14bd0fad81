//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 resource limit exceeded. Data goes to standard output (or `--output`),
//! diagnostics to standard error.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::grammat::{
    build_matrix, det_bareiss, verify_all, Check, Fault, Limits, MatrixKind, Specialization,
};
use crate::ncpart::{brute_force_nc, enumerate_nc, Kind, NcPartition, Partition};
use crate::tldiag;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "NCGRAM_THREADS";

/// Largest type A rank accepted by `det`.
pub const MAX_DET_A: usize = 5;
/// Largest type B rank accepted by `det`.
pub const MAX_DET_B: usize = 3;

#[derive(Parser, Debug)]
#[command(
    name = "ncgram",
    version,
    about = "Chromatic-join and Temperley-Lieb Gram matrices over non-crossing partitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List non-crossing partitions in basis order.
    Enumerate {
        #[arg(long = "type", value_enum)]
        kind: TypeFlag,
        #[arg(long)]
        n: usize,
        /// Use the exhaustive filter over all set partitions.
        #[arg(long)]
        brute_force: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Show partitions with their diagram images.
    Bijection {
        #[arg(long = "type", value_enum)]
        kind: TypeFlag,
        #[arg(long)]
        n: usize,
        /// A single partition in text form; all of them when omitted.
        #[arg(long)]
        partition: Option<String>,
        /// Also show the annular quotient (type B).
        #[arg(long)]
        annular: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Build a join or Gram matrix.
    Matrix {
        #[arg(long)]
        kind: MatrixKind,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact determinant of a matrix. Join matrices are taken at a -> a^2,
    /// d -> d^2 unless --raw is given.
    Det {
        #[arg(long)]
        kind: MatrixKind,
        #[arg(long)]
        n: usize,
        /// Keep the variable a (type B); otherwise a := 1.
        #[arg(long)]
        two_variable: bool,
        /// Skip the square substitution for join matrices.
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run one verification check.
    Verify {
        /// theoremA, theoremB, lemma, det, detSymbolic, detEval, detOneVar, sums or annular.
        #[arg(long)]
        check: String,
        #[arg(long)]
        n: usize,
        /// Only with --check det.
        #[arg(long, value_enum)]
        method: Option<MethodFlag>,
        #[command(flatten)]
        fault: FaultArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run every check up to its limit.
    VerifyAll {
        /// Override one limit, e.g. theoremA=4; 0 skips the check.
        #[arg(long = "limit", value_name = "CHECK=N")]
        limits: Vec<String>,
        #[command(flatten)]
        fault: FaultArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write data here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FaultArgs {
    /// Test hook: TARGET:I:J adds one to a pairwise count, TARGET being
    /// circles, zero-circles, blocks or zero-blocks.
    #[arg(long, hide = true)]
    inject_fault: Option<Fault>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TypeFlag {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<TypeFlag> for Kind {
    fn from(t: TypeFlag) -> Kind {
        match t {
            TypeFlag::A => Kind::A,
            TypeFlag::B => Kind::B,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodFlag {
    Symbolic,
    Evaluation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

struct Outcome {
    body: String,
    pass: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, pass: true }
    }
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    configure_threads();
    let out = match &cli.command {
        Command::Enumerate { out, .. }
        | Command::Bijection { out, .. }
        | Command::Matrix { out, .. }
        | Command::Det { out, .. }
        | Command::Verify { out, .. }
        | Command::VerifyAll { out, .. } => out,
    };
    let result = dispatch(&cli.command, out.format).and_then(|outcome| {
        emit(&outcome.body, out.output.as_ref(), stdout)?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) if outcome.pass => EXIT_OK,
        Ok(_) => {
            let _ = writeln!(stderr, "verification failed");
            EXIT_FAIL
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::SizeLimit { .. } | Error::ExponentCap { .. } => EXIT_LIMIT,
        Error::InexactDivision(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn configure_threads() {
    if let Some(k) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        // Only the first call in a process can set the global pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
}

fn emit(body: &str, path: Option<&PathBuf>, stdout: &mut dyn Write) -> io::Result<()> {
    match path {
        Some(p) => File::create(p)?.write_all(body.as_bytes()),
        None => stdout.write_all(body.as_bytes()),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn dispatch(command: &Command, format: Format) -> Result<Outcome, Failure> {
    match command {
        Command::Enumerate {
            kind,
            n,
            brute_force,
            ..
        } => {
            let list = if *brute_force {
                brute_force_nc(*n, (*kind).into())?
            } else {
                enumerate_nc((*kind).into(), *n)?
            };
            Ok(Outcome::ok(match format {
                Format::Text => list.iter().map(|p| format!("{p}\n")).collect(),
                Format::Json => to_json(&list),
            }))
        }
        Command::Bijection {
            kind,
            n,
            partition,
            annular,
            ..
        } => bijection((*kind).into(), *n, partition.as_deref(), *annular, format),
        Command::Matrix { kind, n, .. } => {
            let m = build_matrix(*kind, *n)?;
            Ok(Outcome::ok(match format {
                Format::Text => m.to_text(),
                Format::Json => to_json(&m),
            }))
        }
        Command::Det {
            kind,
            n,
            two_variable,
            raw,
            ..
        } => det(*kind, *n, *two_variable, *raw, format),
        Command::Verify {
            check,
            n,
            method,
            fault,
            ..
        } => {
            let check = resolve_check(check, *method)?;
            let report = check.run(*n, fault.inject_fault)?;
            let body = match format {
                Format::Text => {
                    let mut s = report.summary_line();
                    s.push('\n');
                    for note in &report.notes {
                        s.push_str(&format!("  {note}\n"));
                    }
                    s
                }
                Format::Json => to_json(&report),
            };
            Ok(Outcome {
                body,
                pass: report.pass,
            })
        }
        Command::VerifyAll { limits, fault, .. } => {
            let mut lim = Limits::default();
            for spec in limits {
                let (name, value) = spec
                    .split_once('=')
                    .ok_or_else(|| Failure::Usage(format!("limit '{spec}' is not CHECK=N")))?;
                let check: Check = name.parse().map_err(Failure::Usage)?;
                let value: usize = value
                    .parse()
                    .map_err(|_| Failure::Usage(format!("bad limit value '{value}'")))?;
                lim.set(check, value)?;
            }
            let agg = verify_all(&lim, fault.inject_fault)?;
            let body = match format {
                Format::Text => {
                    let mut s = String::new();
                    for r in &agg.reports {
                        s.push_str(&r.summary_line());
                        s.push('\n');
                        for note in &r.notes {
                            s.push_str(&format!("  {note}\n"));
                        }
                    }
                    match agg.first_failure() {
                        None => s.push_str(&format!("ALL PASS ({} reports)\n", agg.reports.len())),
                        Some(r) => s.push_str(&format!("FIRST FAILURE: {}\n", r.summary_line())),
                    }
                    s
                }
                Format::Json => to_json(&agg),
            };
            Ok(Outcome {
                body,
                pass: agg.pass,
            })
        }
    }
}

fn resolve_check(name: &str, method: Option<MethodFlag>) -> Result<Check, Failure> {
    if name == "det" {
        return Ok(match method.unwrap_or(MethodFlag::Symbolic) {
            MethodFlag::Symbolic => Check::DetSymbolic,
            MethodFlag::Evaluation => Check::DetEval,
        });
    }
    if method.is_some() {
        return Err(Failure::Usage("--method is only valid with --check det".into()));
    }
    name.parse().map_err(Failure::Usage)
}

fn bijection(kind: Kind, n: usize, partition: Option<&str>, annular: bool, format: Format) -> Result<Outcome, Failure> {
    if annular && kind == Kind::A {
        return Err(Failure::Usage("--annular needs --type B".into()));
    }
    let list: Vec<NcPartition> = match partition {
        Some(text) => vec![NcPartition::try_from(Partition::parse(text, kind, n)?)?],
        None => enumerate_nc(kind, n)?,
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    for p in &list {
        let diagram = match kind {
            Kind::A => tldiag::iota_a(p)?,
            Kind::B => tldiag::iota_b(p)?,
        };
        let quotient = if annular {
            Some(tldiag::to_annular(&diagram)?)
        } else {
            None
        };
        text.push_str(&format!("{p} -> {diagram}"));
        if let Some(a) = &quotient {
            text.push_str(&format!(" -> {a}"));
        }
        text.push('\n');
        let mut row = json!({ "partition": p, "diagram": diagram });
        if let Some(a) = &quotient {
            row["annular"] = json!(a.chords());
        }
        rows.push(row);
    }
    Ok(Outcome::ok(match format {
        Format::Text => text,
        Format::Json => to_json(&rows),
    }))
}

fn det(kind: MatrixKind, n: usize, two_variable: bool, raw: bool, format: Format) -> Result<Outcome, Failure> {
    let pkind = kind.partition_kind();
    if two_variable && pkind == Kind::A {
        return Err(Failure::Usage("--two-variable needs a type B matrix".into()));
    }
    if raw && !kind.is_join() {
        return Err(Failure::Usage("--raw only applies to join matrices".into()));
    }
    let max = match pkind {
        Kind::A => MAX_DET_A,
        Kind::B => MAX_DET_B,
    };
    Error::check_range("determinant", n, 1, max)?;
    let spec = Specialization {
        squares: kind.is_join() && !raw,
        alpha_one: !two_variable,
    };
    let m = build_matrix(kind, n)?;
    let value = det_bareiss(m.to_polys(spec))?;
    Ok(Outcome::ok(match format {
        Format::Text => format!("{value}\n"),
        Format::Json => to_json(&json!({
            "kind": kind,
            "n": n,
            "squares": spec.squares,
            "two_variable": two_variable,
            "det": value,
        })),
    }))
}
