//! Command-line adapter. Everything here maps arguments onto library calls
//! and formats the results; `run` returns the process exit code.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::codec::{decode_stream, encode_stream};
use crate::error::Error;
use crate::numeral::greedy_decompose;
use crate::sequences::SequenceSpec;
use crate::verify::{self, VerifyOptions};

pub const EXIT_OK: u8 = 0;
/// Verification ran and at least one claim failed.
pub const EXIT_CLAIM_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;
pub const EXIT_IO: u8 = 74;

#[derive(Debug, Parser)]
#[command(
    name = "zeck",
    version,
    about = "Zeckendorf-style decompositions, codes and verification sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SystemArg {
    Fib,
    Lucas,
    Kbonacci,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Terms,
    Indices,
    Bits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Lemmas,
    Uniqueness,
    Codec,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical decomposition of N.
    Decompose {
        #[arg(long, value_enum)]
        system: SystemArg,
        /// Order, required with --system kbonacci.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "terms")]
        format: FormatArg,
        n: String,
    },
    /// Print sequence terms, or the canonical bit pattern of 1..=N.
    Table {
        #[arg(long, value_enum)]
        system: SystemArg,
        #[arg(long)]
        k: Option<usize>,
        /// Print the first N sequence terms.
        #[arg(
            long,
            conflicts_with = "integers",
            required_unless_present = "integers"
        )]
        terms: Option<usize>,
        /// Print index, term value and decomposition bits for each integer 1..=N.
        #[arg(long)]
        integers: Option<u64>,
    },
    /// Encode whitespace-separated integers into a stream file.
    Encode {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..))]
        k: u8,
        /// Input text file; standard input when absent or "-".
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: PathBuf,
    },
    /// Decode a stream file into newline-separated integers.
    Decode {
        #[arg(long)]
        input: PathBuf,
        /// Output file; standard output when absent or "-".
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run verification sweeps and report each claim.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Upper bound for every lemma sweep.
        #[arg(long)]
        max_n: Option<usize>,
        /// Upper bound for uniqueness sweeps (and the counterexample search with --initials).
        #[arg(long)]
        max: Option<u64>,
        /// Orders for the uniqueness sweep, e.g. "2..4" or "3".
        #[arg(long, value_parser = parse_order_range)]
        k: Option<RangeInclusive<usize>>,
        /// Search for a counterexample over the sequence seeded with these terms, e.g. "1,3".
        #[arg(long, value_delimiter = ',')]
        initials: Option<Vec<u64>>,
        /// Upper bound for the exhaustive enumeration cross-check.
        #[arg(long)]
        enum_max: Option<u64>,
        /// Upper bound for the greedy round-trip sweep.
        #[arg(long)]
        greedy_max: Option<u64>,
        /// Upper bound for the codec round-trip sweep.
        #[arg(long)]
        codec_max: Option<u64>,
    },
}

fn parse_order_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse(lo)?, parse(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let k = parse(s)?;
            (k, k)
        }
    };
    if lo < 2 || hi < lo {
        return Err(format!("invalid order range {s:?}"));
    }
    Ok(lo..=hi)
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
    Io(String),
    ClaimsFailed,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Data(_) => EXIT_DATA,
            Self::Io(_) => EXIT_IO,
            Self::ClaimsFailed => EXIT_CLAIM_FAILED,
        }
    }
}

fn resolve_spec(system: SystemArg, k: Option<usize>) -> Result<SequenceSpec, Failure> {
    match (system, k) {
        (SystemArg::Fib, None) => Ok(SequenceSpec::fibonacci()),
        (SystemArg::Lucas, None) => Ok(SequenceSpec::lucas()),
        (SystemArg::Kbonacci, Some(k)) => {
            SequenceSpec::kbonacci(k).map_err(|e| Failure::Usage(e.to_string()))
        }
        (SystemArg::Kbonacci, None) => Err(Failure::Usage(
            "--k is required with --system kbonacci".into(),
        )),
        (_, Some(_)) => Err(Failure::Usage(
            "--k is only valid with --system kbonacci".into(),
        )),
    }
}

fn parse_nat(s: &str) -> Option<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigUint::parse_bytes(s.as_bytes(), 10)
}

/// Whitespace-separated nonnegative decimal integers; errors name the
/// 1-based line and column of the offending token.
pub fn parse_integers(text: &str) -> Result<Vec<BigUint>, String> {
    let mut out = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let mut rest = line;
        let mut col = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let token_len = rest[start..]
                .find(char::is_whitespace)
                .unwrap_or(rest.len() - start);
            let token = &rest[start..start + token_len];
            let column = line[..col + start].chars().count() + 1;
            let value = parse_nat(token).ok_or_else(|| {
                format!(
                    "line {}, column {column}: invalid integer {token:?}",
                    line_no + 1
                )
            })?;
            out.push(value);
            col += start + token_len;
            rest = &rest[start + token_len..];
        }
    }
    Ok(out)
}

/// Runs the CLI with the given arguments (program name first). Returns
/// the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, stdin, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            match &failure {
                Failure::Usage(m) => {
                    let _ = writeln!(stderr, "usage error: {m}");
                }
                Failure::Data(m) | Failure::Io(m) => {
                    let _ = writeln!(stderr, "error: {m}");
                }
                Failure::ClaimsFailed => {}
            }
            failure.code()
        }
    }
}

fn io_err(context: impl std::fmt::Display) -> impl FnOnce(std::io::Error) -> Failure {
    move |e| Failure::Io(format!("{context}: {e}"))
}

fn execute(
    command: Command,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    let out_err = io_err("standard output");
    match command {
        Command::Decompose {
            system,
            k,
            format,
            n,
        } => {
            let spec = resolve_spec(system, k)?;
            let x = parse_nat(&n)
                .ok_or_else(|| Failure::Usage(format!("not a nonnegative integer: {n:?}")))?;
            let rep = greedy_decompose(spec, &x);
            let text = match format {
                FormatArg::Terms => {
                    let terms: Vec<String> = rep.terms().iter().map(ToString::to_string).collect();
                    let rhs = if terms.is_empty() {
                        "0".to_string()
                    } else {
                        terms.join(" + ")
                    };
                    format!("{x} = {rhs}")
                }
                FormatArg::Indices => rep.to_string(),
                FormatArg::Bits => {
                    let len = rep.max_index().map_or(1, |m| m + 1);
                    rep.coefficient_bits(len)
                        .map_err(|e| Failure::Data(e.to_string()))?
                        .to_string()
                }
            };
            writeln!(stdout, "{text}").map_err(out_err)
        }
        Command::Table {
            system,
            k,
            terms,
            integers,
        } => {
            let spec = resolve_spec(system, k)?;
            if let Some(count) = terms {
                if count == 0 {
                    return Err(Failure::Usage("--terms must be at least 1".into()));
                }
                let line: Vec<String> = spec
                    .first_terms(count)
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                return writeln!(stdout, "{}", line.join(" ")).map_err(out_err);
            }
            let count = integers.expect("clap requires --terms or --integers");
            if count == 0 {
                return Err(Failure::Usage("--integers must be at least 1".into()));
            }
            for n in 1..=count {
                let x = BigUint::from(n);
                let rep = greedy_decompose(spec, &x);
                let top = rep.max_index().expect("n >= 1");
                let bits = rep
                    .coefficient_bits(top + 1)
                    .map_err(|e| Failure::Data(e.to_string()))?;
                writeln!(stdout, "{n} {top} {} {bits}", spec.term(top))
                    .map_err(io_err("standard output"))?;
            }
            Ok(())
        }
        Command::Encode { k, input, output } => {
            let mut text = String::new();
            match input.as_deref().filter(|p| p.as_os_str() != "-") {
                Some(path) => {
                    text = fs::read_to_string(path).map_err(io_err(path.display()))?;
                }
                None => {
                    stdin
                        .read_to_string(&mut text)
                        .map_err(io_err("standard input"))?;
                }
            }
            let values = parse_integers(&text).map_err(Failure::Data)?;
            let bytes = encode_stream(k, &values).map_err(|e| Failure::Data(e.to_string()))?;
            fs::write(&output, &bytes).map_err(io_err(output.display()))?;
            writeln!(
                stderr,
                "encoded {} integers, {} bytes",
                values.len(),
                bytes.len()
            )
            .map_err(io_err("standard error"))
        }
        Command::Decode { input, output } => {
            let data = fs::read(&input).map_err(io_err(input.display()))?;
            let (_, values) = decode_stream(&data).map_err(|e| match e {
                Error::UnsupportedFormat(_) | Error::CorruptStream(_) => {
                    Failure::Data(e.to_string())
                }
                other => Failure::Data(format!("corrupt stream: {other}")),
            })?;
            let mut text = String::new();
            for v in &values {
                text.push_str(&v.to_string());
                text.push('\n');
            }
            match output.as_deref().filter(|p| p.as_os_str() != "-") {
                Some(path) => fs::write(path, text).map_err(io_err(path.display())),
                None => stdout.write_all(text.as_bytes()).map_err(out_err),
            }
        }
        Command::Verify {
            suite,
            max_n,
            max,
            k,
            initials,
            enum_max,
            greedy_max,
            codec_max,
        } => {
            let mut opts = VerifyOptions::default();
            if let Some(n) = max_n {
                opts = opts.with_lemma_bound(n);
            }
            if let Some(k) = k {
                opts.orders = k;
            }
            if let Some(e) = enum_max {
                opts.enum_max = e;
            }
            if let Some(g) = greedy_max {
                opts.greedy_max = g;
            }
            if let Some(c) = codec_max {
                opts.codec_max = c;
            }
            if let Some(seed) = initials {
                let bound = max.unwrap_or(opts.perturbed_bound);
                let claim = verify::initials_claim(&seed, bound);
                writeln!(stdout, "{claim}").map_err(io_err("standard output"))?;
                return if claim.passed {
                    Ok(())
                } else {
                    Err(Failure::ClaimsFailed)
                };
            }
            if let Some(m) = max {
                opts.unique_max = m;
            }
            opts.check_limits()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let report = match suite {
                SuiteArg::Lemmas => verify::lemmas(&opts),
                SuiteArg::Uniqueness => verify::uniqueness(&opts),
                SuiteArg::Codec => verify::codec(&opts),
                SuiteArg::All => verify::all(&opts),
            };
            writeln!(stdout, "{report}").map_err(io_err("standard output"))?;
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure::ClaimsFailed)
            }
        }
    }
}
