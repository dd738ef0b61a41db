//! `mercode`: encode, corrupt, decode, benchmark and self-test.

mod format;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mercode::algebra::FieldConfig;
use mercode::codes::{agreement, corrupt, CodeKind, CodeParams};
use mercode::decode::{bench_ladder, decode_capacity, decode_johnson_report, BenchRow, CapacityOptions, DEFAULT_PRUNE_CONSTANT};
use mercode::selftest::{random_poly, run_selftest, SelftestOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use format::{coefficient_line, parse_message, parse_word, write_message, write_word};

/// NTT-friendly default modulus, `15 * 2^27 + 1`.
const DEFAULT_P: u64 = 2013265921;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Core(#[from] mercode::Error),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Parser)]
#[command(name = "mercode", version, about = "List decoding of multiplicity and folded Reed-Solomon codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a message file, or a seeded random message.
    Encode(EncodeArgs),
    /// Replace exactly `--errors` columns of a word with random columns.
    Corrupt(CorruptArgs),
    /// List decode a received word; exit 2 when the list is empty.
    Decode(DecodeArgs),
    /// Time the capacity decoder over a ladder of block lengths; prints CSV.
    Bench(BenchArgs),
    /// Run the oracle and invariant suites at reduced size.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CodeArg {
    Mult,
    Frs,
}

impl From<CodeArg> for CodeKind {
    fn from(c: CodeArg) -> Self {
        match c {
            CodeArg::Mult => CodeKind::Mult,
            CodeArg::Frs => CodeKind::Frs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Capacity,
    Johnson,
}

#[derive(Args)]
struct EncodeArgs {
    /// Message file; omit to draw a random message of degree `--d`.
    message: Option<PathBuf>,
    #[arg(long, value_enum)]
    code: CodeArg,
    /// Field characteristic; taken from the message file when one is given.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: usize,
    /// Degree bound; defaults to the message file's, or `rate s n`.
    #[arg(long)]
    d: Option<usize>,
    /// Rate `d / (s n)` used when neither `--d` nor a message file is given.
    #[arg(long)]
    rate: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the random message here.
    #[arg(long)]
    message_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CorruptArgs {
    word: PathBuf,
    #[arg(long)]
    errors: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecodeArgs {
    word: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Capacity)]
    mode: Mode,
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_PRUNE_CONSTANT)]
    prune_constant: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value_t = CodeArg::Mult)]
    code: CodeArg,
    #[arg(long, default_value_t = DEFAULT_P)]
    p: u64,
    /// Comma-separated block lengths.
    #[arg(long, value_delimiter = ',', default_values_t = [1024usize, 2048, 4096, 8192, 16384])]
    n: Vec<usize>,
    #[arg(long, default_value_t = 25)]
    s: usize,
    #[arg(long, default_value_t = 0.25)]
    rate: f64,
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    /// Fraction of corrupted columns.
    #[arg(long, default_value_t = 0.24)]
    errors: f64,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_PRUNE_CONSTANT)]
    prune_constant: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Corrupt one solver output so the run must fail.
    #[arg(long)]
    inject_fault: bool,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

/// Writes to `out`, or stdout when absent.
fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn build_code(kind: CodeKind, field: FieldConfig, n: usize, s: usize, d: usize) -> Result<CodeParams, CliError> {
    Ok(match kind {
        CodeKind::Mult => CodeParams::mult(field, n, s, d)?,
        CodeKind::Frs => CodeParams::frs(field, n, s, d)?,
    })
}

fn cmd_encode(args: EncodeArgs) -> Result<ExitCode, CliError> {
    let given = args.message.as_deref().map(read).transpose()?.map(|t| parse_message(&t)).transpose()?;
    let p = match (&given, args.p) {
        (Some(m), Some(p)) if m.p != p => {
            return Err(CliError::Invalid(format!("--p {p} disagrees with the message field {}", m.p)))
        }
        (Some(m), _) => m.p,
        (None, p) => p.unwrap_or(DEFAULT_P),
    };
    let field = FieldConfig::new(p)?;
    let d = match (args.d, &given, args.rate) {
        (Some(d), _, _) => d,
        (None, Some(m), _) => m.d,
        (None, None, Some(rate)) => (rate * (args.s * args.n) as f64).round() as usize,
        (None, None, None) => return Err(CliError::Invalid("give a message file, --d or --rate".into())),
    };
    let code = build_code(args.code.into(), field.clone(), args.n, args.s, d)?;
    let message = match given {
        Some(m) => m.message,
        None => {
            let msg = random_poly(&field, &mut ChaCha8Rng::seed_from_u64(args.seed), d + 1);
            if let Some(path) = &args.message_out {
                emit(Some(path), &write_message(p, d, &msg))?;
            }
            msg
        }
    };
    let word = code.encode(&message)?;
    emit(args.out.as_deref(), &write_word(&code, word.columns()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_corrupt(args: CorruptArgs) -> Result<ExitCode, CliError> {
    let file = parse_word(&read(&args.word)?)?;
    let word = mercode::codes::Codeword::new(file.columns);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let received = corrupt(&file.code, &word, args.errors, &mut rng)?;
    emit(args.out.as_deref(), &write_word(&file.code, received.columns()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_decode(args: DecodeArgs) -> Result<ExitCode, CliError> {
    let file = parse_word(&read(&args.word)?)?;
    let received = file.received()?;
    let code = &file.code;
    let report = match args.mode {
        Mode::Capacity => {
            let mut options = CapacityOptions::new(args.epsilon);
            options.prune_constant = args.prune_constant;
            decode_capacity(&received, code, &options, &mut ChaCha8Rng::seed_from_u64(args.seed))?
        }
        Mode::Johnson => decode_johnson_report(&received, code, args.epsilon)?,
    };
    let mut text = format!(
        "# messages={} threshold={} candidates={} interpolation_degree={}\n",
        report.messages.len(),
        report.threshold,
        report.candidates,
        report.interpolation_degree
    );
    for msg in &report.messages {
        let agree = agreement(code.encode(msg)?.columns(), received.columns())?;
        text.push_str(&format!("agreement={agree} {}\n", coefficient_line(msg, code.d())));
    }
    emit(args.out.as_deref(), &text)?;
    Ok(if report.messages.is_empty() { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode, CliError> {
    let field = FieldConfig::new(args.p)?;
    let mut options = CapacityOptions::new(args.epsilon);
    options.prune_constant = args.prune_constant;
    let rows =
        bench_ladder(&field, args.code.into(), &args.n, args.s, args.rate, &options, args.errors, args.trials, args.seed)?;
    let mut text = format!("{}\n", BenchRow::CSV_HEADER);
    for row in &rows {
        text.push_str(&row.csv());
        text.push('\n');
    }
    emit(args.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(args: SelftestArgs) -> Result<ExitCode, CliError> {
    let options = SelftestOptions { trials: args.trials, seed: args.seed, inject_fault: args.inject_fault };
    let report = run_selftest(&options);
    for suite in &report.suites {
        let verdict = if suite.ok() { "ok" } else { "FAIL" };
        println!("{verdict:>4}  {}/{}  {}", suite.passed, suite.total, suite.name);
    }
    Ok(if report.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    // Usage errors exit with 1; clap's own code 2 means an empty list here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Encode(a) => cmd_encode(a),
        Command::Corrupt(a) => cmd_corrupt(a),
        Command::Decode(a) => cmd_decode(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Selftest(a) => cmd_selftest(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("mercode: {e}");
        ExitCode::from(1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use mercode::algebra::Poly;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn random_messages_are_seeded() {
        let f = FieldConfig::new(DEFAULT_P).unwrap();
        let a: Poly = random_poly(&f, &mut ChaCha8Rng::seed_from_u64(4), 10);
        let b: Poly = random_poly(&f, &mut ChaCha8Rng::seed_from_u64(4), 10);
        assert_eq!(a, b);
    }
}
