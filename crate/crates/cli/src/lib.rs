//! Command-line front end: `digits`, `eval`, `verify` and `table`.
//!
//! Exit codes: 0 on success, 1 when a closed form disagrees with its
//! oracle, 2 on usage or domain errors.

use std::fmt::Write as _;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use floorsum::verify::{self, SweepConfig, SweepSummary};
use floorsum::{identities, oracle, Argument, Family, Natural, Rational, Scope, SumSpec};
use num_bigint::BigUint;
use serde::Serialize;

pub mod record;

use record::{CsvRow, DigitMetadata, OutputRecord};

/// Environment variable holding the worker count for `verify`.
pub const THREADS_ENV: &str = "RADIX_VERIFY_THREADS";

#[derive(Parser, Debug)]
#[command(name = "floorsum", version, about = "Digit-sum closed forms for floor, ceiling, fractional and sawtooth sums")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Show the base-b digits of n and their statistics.
    Digits {
        #[arg(long)]
        n: BigUint,
        #[arg(long)]
        base: BigUint,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate one sum by closed form, brute force, or both.
    Eval(EvalArgs),
    /// Check every closed form against its oracle over a sweep.
    Verify(VerifyArgs),
    /// Tabulate a family over a range of arguments.
    Table(TableArgs),
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Natural argument.
    #[arg(long, conflicts_with = "x")]
    pub n: Option<BigUint>,
    /// Rational argument (`p/q` or a terminating decimal); ceil family only
    /// unless it is an integer.
    #[arg(long)]
    pub x: Option<Rational>,
    #[arg(long)]
    pub base: BigUint,
    /// Shift index; defaults to 1 for single sums.
    #[arg(long)]
    pub j: Option<BigUint>,
    #[arg(long, value_enum, default_value_t = Mode::Closed)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Inclusive range of integer arguments, `a..b`.
    #[arg(long, value_parser = parse_range, default_value = "0..1024")]
    pub n: (u64, u64),
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7,8,9,10,16")]
    pub bases: Vec<u64>,
    /// Also check the ceil family on the grid `x = t / d`.
    #[arg(long)]
    pub x_den: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random arguments per base.
    #[arg(long, default_value_t = 0)]
    pub count: usize,
    /// Bit length of the random arguments.
    #[arg(long, default_value_t = 256)]
    pub bits: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub base: BigUint,
    /// Inclusive range of arguments, `a..b`.
    #[arg(long, value_parser = parse_range)]
    pub n: (u64, u64),
    #[arg(long)]
    pub j: Option<BigUint>,
    /// For the ceil families: tabulate `x = t / d` over the range instead.
    #[arg(long)]
    pub x_den: Option<u64>,
    #[arg(long, value_enum, default_value_t = Mode::Closed)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Floor,
    FloorDouble,
    Ceil,
    CeilDouble,
    Frac,
    FracDouble,
    Sawtooth,
    SawtoothDouble,
}

impl FamilyArg {
    fn family(self) -> Family {
        match self {
            FamilyArg::Floor | FamilyArg::FloorDouble => Family::Floor,
            FamilyArg::Ceil | FamilyArg::CeilDouble => Family::Ceil,
            FamilyArg::Frac | FamilyArg::FracDouble => Family::Frac,
            FamilyArg::Sawtooth | FamilyArg::SawtoothDouble => Family::Sawtooth,
        }
    }

    fn is_double(self) -> bool {
        matches!(
            self,
            FamilyArg::FloorDouble | FamilyArg::CeilDouble | FamilyArg::FracDouble | FamilyArg::SawtoothDouble
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Closed,
    Direct,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Md,
}

/// `a..b`, `a..=b` (both inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let parse = |v: &str| v.trim().parse::<u64>().map_err(|e| format!("{v:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse(lo)?, parse(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

/// A failure that maps onto an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<floorsum::Error> for Failure {
    fn from(e: floorsum::Error) -> Self {
        Failure::usage(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

const EMPTY_SUM_NOTE: &str =
    "n = 0: the sum over 0 <= k <= log_b n is empty; the closed form is undefined (no leading digit)";

fn edge_note(spec: &SumSpec) -> CliResult<Option<String>> {
    if spec.family() != Family::Ceil || !identities::ceil_correction_applies(spec.argument(), spec.base())? {
        return Ok(None);
    }
    let x = spec.argument().as_rational();
    let note = match spec.scope() {
        Scope::Single(j) => {
            let stated = identities::ceil_sum_uncorrected(&x, spec.base(), j)?;
            format!(
                "ceil(x) is a power of b and x is not an integer: the sum stops at k = m - 1, \
                 so the leading-digit closed form ({stated}) is reduced by 1"
            )
        }
        Scope::Double => {
            let stated = identities::ceil_double_sum_by_leading_digit(&x, spec.base())?;
            format!(
                "ceil(x) is a power of b and x is not an integer: (b-1)(floor(log_b x)+1)+ceil(x)-1 \
                 is used; the leading-digit form (b-1)(m+1)+n-1 would give {stated}"
            )
        }
    };
    Ok(Some(note))
}

/// Evaluates one input into a record; `digits` controls whether digit
/// metadata is attached.
fn evaluate_record(
    command: &str,
    family: FamilyArg,
    argument: Argument,
    base: &Natural,
    j: Option<&Natural>,
    mode: Mode,
    digits: bool,
) -> CliResult<OutputRecord> {
    let scope = if family.is_double() {
        Scope::Double
    } else {
        Scope::Single(j.cloned().unwrap_or_else(|| Natural::from(1u32)))
    };
    let spec = SumSpec::new(family.family(), scope, argument, base.clone())?;
    let mut record = OutputRecord {
        command: command.to_string(),
        family: Some(spec.label()),
        base: base.to_string(),
        j: spec.j().map(ToString::to_string),
        ..OutputRecord::default()
    };
    let subject = match spec.argument() {
        Argument::Natural(n) => n.clone(),
        Argument::Rational(x) => x.ceil().to_biguint().ok_or_else(|| Failure::usage(format!("x = {x} is below 1")))?,
    };
    if spec.family() == Family::Ceil {
        record.x = Some(spec.argument().to_string());
    }
    record.n = Some(subject.to_string());

    let empty = matches!(spec.family(), Family::Frac | Family::Sawtooth) && spec.n().is_some_and(|n| *n == BigUint::default());
    let (closed, direct) = if empty {
        record.notes.push(EMPTY_SUM_NOTE.to_string());
        (Some(Rational::zero()), Some(Rational::zero()))
    } else {
        let closed = match mode {
            Mode::Closed | Mode::Both => Some(identities::evaluate(&spec)?),
            Mode::Direct => None,
        };
        let direct = match mode {
            Mode::Direct | Mode::Both => Some(oracle::evaluate_direct(&spec)?),
            Mode::Closed => None,
        };
        (closed, direct)
    };
    let (closed, direct) = match mode {
        Mode::Closed => (closed, None),
        Mode::Direct => (None, direct),
        Mode::Both => (closed, direct),
    };
    if let (Some(c), Some(d)) = (&closed, &direct) {
        record.matches = Some(c == d);
    }
    record.closed_value = closed.map(|v| v.to_string());
    record.direct_value = direct.map(|v| v.to_string());
    if let Some(note) = edge_note(&spec)? {
        record.notes.push(note);
    }
    if digits {
        record.digits = Some(DigitMetadata::of(&subject, base)?);
    }
    Ok(record)
}

fn argument_from(n: Option<BigUint>, x: Option<Rational>) -> CliResult<Argument> {
    match (n, x) {
        (Some(n), None) => Ok(Argument::Natural(n)),
        (None, Some(x)) => Ok(Argument::Rational(x)),
        _ => Err(Failure::usage("exactly one of --n or --x is required")),
    }
}

fn render_digits_text(n: &Natural, meta: &DigitMetadata) -> String {
    let opt = |v: Option<u64>| v.map_or_else(|| "undefined".to_string(), |v| v.to_string());
    let mut out = String::new();
    writeln!(out, "n = {n}").unwrap();
    writeln!(out, "expansion: {}", meta.expansion).unwrap();
    writeln!(out, "digit sum s_b(n): {}", meta.digit_sum).unwrap();
    writeln!(out, "leading position m: {}", opt(meta.leading_pos)).unwrap();
    writeln!(out, "valuation nu_b(n): {}", opt(meta.valuation)).unwrap();
    writeln!(out, "partition lambda: ({})", meta.partition.join(",")).unwrap();
    match &meta.conjugate {
        Some(c) => {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            writeln!(out, "conjugate lambda': ({})", parts.join(",")).unwrap();
        }
        None => writeln!(out, "conjugate lambda': (base too large to list)").unwrap(),
    }
    out
}

fn render_record_text(r: &OutputRecord) -> String {
    let mut out = String::new();
    let family = r.family.as_deref().unwrap_or("");
    match &r.x {
        Some(x) => write!(out, "{family} x={x} b={}", r.base).unwrap(),
        None => write!(out, "{family} n={} b={}", r.n.as_deref().unwrap_or(""), r.base).unwrap(),
    }
    if let Some(j) = &r.j {
        write!(out, " j={j}").unwrap();
    }
    out.push('\n');
    if let Some(v) = &r.closed_value {
        writeln!(out, "closed: {v}").unwrap();
    }
    if let Some(v) = &r.direct_value {
        writeln!(out, "direct: {v}").unwrap();
    }
    if let Some(m) = r.matches {
        writeln!(out, "{}", if m { "match" } else { "MISMATCH" }).unwrap();
    }
    for note in &r.notes {
        writeln!(out, "note: {note}").unwrap();
    }
    if let Some(meta) = &r.digits {
        writeln!(
            out,
            "digits of {}: {}, s={}, m={}, nu={}, lambda'=({})",
            r.n.as_deref().unwrap_or(""),
            meta.expansion,
            meta.digit_sum,
            meta.leading_pos.map_or("-".into(), |v| v.to_string()),
            meta.valuation.map_or("-".into(), |v| v.to_string()),
            meta.conjugate
                .as_ref()
                .map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
                .unwrap_or_default(),
        )
        .unwrap();
    }
    out
}

fn render_csv(records: &[OutputRecord]) -> CliResult<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in records {
        writer
            .serialize(CsvRow::from(r))
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| Failure::usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Markdown table; columns that are empty in every row are dropped.
fn render_markdown(records: &[OutputRecord]) -> String {
    type Column = (&'static str, fn(&OutputRecord) -> String);
    let columns: [Column; 9] = [
        ("family", |r| r.family.clone().unwrap_or_default()),
        ("n", |r| r.n.clone().unwrap_or_default()),
        ("x", |r| r.x.clone().unwrap_or_default()),
        ("b", |r| r.base.clone()),
        ("j", |r| r.j.clone().unwrap_or_default()),
        ("closed", |r| r.closed_value.clone().unwrap_or_default()),
        ("direct", |r| r.direct_value.clone().unwrap_or_default()),
        ("match", |r| r.matches.map(|m| m.to_string()).unwrap_or_default()),
        ("notes", |r| r.notes.join("; ")),
    ];
    let used: Vec<&Column> = columns
        .iter()
        .filter(|(_, get)| records.iter().any(|r| !get(r).is_empty()))
        .collect();
    let mut out = String::new();
    let header: Vec<&str> = used.iter().map(|(name, _)| *name).collect();
    writeln!(out, "| {} |", header.join(" | ")).unwrap();
    writeln!(out, "|{}", "---|".repeat(used.len())).unwrap();
    for r in records {
        let cells: Vec<String> = used.iter().map(|(_, get)| get(r)).collect();
        writeln!(out, "| {} |", cells.join(" | ")).unwrap();
    }
    out
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serialisable");
    text.push('\n');
    text
}

fn render_records(records: &[OutputRecord], format: Format, single: bool) -> CliResult<String> {
    Ok(match format {
        Format::Json if single => to_json(&records[0]),
        Format::Json => to_json(&records),
        Format::Csv => render_csv(records)?,
        Format::Md => render_markdown(records),
        Format::Text if single => render_record_text(&records[0]),
        Format::Text => render_markdown(records),
    })
}

fn cmd_digits(n: BigUint, base: BigUint, format: Format) -> CliResult<String> {
    let meta = DigitMetadata::of(&n, &base)?;
    Ok(match format {
        Format::Text => render_digits_text(&n, &meta),
        _ => {
            let record = OutputRecord {
                command: "digits".into(),
                n: Some(n.to_string()),
                base: base.to_string(),
                digits: Some(meta),
                ..OutputRecord::default()
            };
            render_records(&[record], format, true)?
        }
    })
}

fn cmd_eval(args: EvalArgs) -> CliResult<(String, bool)> {
    let argument = argument_from(args.n, args.x)?;
    let record = evaluate_record("eval", args.family, argument, &args.base, args.j.as_ref(), args.mode, true)?;
    let ok = record.matches != Some(false);
    Ok((render_records(&[record], args.format, true)?, ok))
}

fn cmd_table(args: TableArgs) -> CliResult<(String, bool)> {
    let (lo, hi) = args.n;
    let arguments: Vec<Argument> = match args.x_den {
        Some(den) if args.family.family() == Family::Ceil => {
            if den == 0 {
                return Err(Failure::usage("--x-den must be positive"));
            }
            (lo.max(1) * den..=hi * den)
                .map(|t| Argument::Rational(Rational::ratio(t, den)))
                .collect()
        }
        Some(_) => return Err(Failure::usage("--x-den applies to the ceil families only")),
        None => (lo..=hi).map(|n| Argument::Natural(n.into())).collect(),
    };
    let records = arguments
        .into_iter()
        .map(|a| evaluate_record("table", args.family, a, &args.base, args.j.as_ref(), args.mode, false))
        .collect::<CliResult<Vec<_>>>()?;
    let ok = records.iter().all(|r| r.matches != Some(false));
    Ok((render_records(&records, args.format, false)?, ok))
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    n_range: [u64; 2],
    bases: &'a [u64],
    x_den: Option<u64>,
    seed: u64,
    count: usize,
    bits: u64,
    checks: u64,
    mismatches: u64,
    summary: &'a SweepSummary,
}

fn threads_from_env() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t > 0)
            .map(Some)
            .ok_or_else(|| Failure::usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn cmd_verify(args: VerifyArgs) -> CliResult<(String, bool)> {
    if let Some(&b) = args.bases.iter().find(|&&b| b < 2) {
        return Err(Failure::usage(format!("base must be at least 2, got {b}")));
    }
    if args.bases.is_empty() {
        return Err(Failure::usage("--bases must not be empty"));
    }
    let config = SweepConfig {
        n_range: args.n,
        bases: args.bases.clone(),
        x_den: args.x_den,
        seed: args.seed,
        count: args.count,
        random_bits: args.bits,
        threads: threads_from_env()?,
    };
    let summary = verify::sweep(&config);
    let ok = summary.mismatches() == 0;
    let text = match args.format {
        Format::Json => to_json(&VerifyOutput {
            n_range: [args.n.0, args.n.1],
            bases: &args.bases,
            x_den: args.x_den,
            seed: args.seed,
            count: args.count,
            bits: args.bits,
            checks: summary.checks(),
            mismatches: summary.mismatches(),
            summary: &summary,
        }),
        _ => {
            let mut out = String::new();
            let bases: Vec<String> = args.bases.iter().map(ToString::to_string).collect();
            writeln!(
                out,
                "verify: n in {}..{}, bases {}, x-den {}, seed {}, {} random {}-bit arguments per base",
                args.n.0,
                args.n.1,
                bases.join(","),
                args.x_den.map_or("none".into(), |d| d.to_string()),
                args.seed,
                args.count,
                args.bits,
            )
            .unwrap();
            for (label, tally) in &summary.tallies {
                writeln!(out, "  {label:<22} {:>10} checks {:>6} mismatches", tally.checks, tally.mismatches).unwrap();
            }
            writeln!(out, "{} checks, {} mismatches", summary.checks(), summary.mismatches()).unwrap();
            if let Some(m) = &summary.first_mismatch {
                writeln!(out, "first mismatch: {} closed={} direct={}", m.check, m.closed, m.direct).unwrap();
            }
            out
        }
    };
    Ok((text, ok))
}

/// Runs a parsed command, writing its output to `out`.
pub fn run(cli: Cli, out: &mut impl Write) -> CliResult<ExitCode> {
    let (text, ok) = match cli.command {
        Command::Digits { n, base, format } => (cmd_digits(n, base, format)?, true),
        Command::Eval(args) => cmd_eval(args)?,
        Command::Verify(args) => cmd_verify(args)?,
        Command::Table(args) => cmd_table(args)?,
    };
    out.write_all(text.as_bytes())?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
