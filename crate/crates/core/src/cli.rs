//! Command-line front end.
//!
//! Exit codes: 0 proven prime / accepted, 1 not proven or rejected, 2 usage
//! error, 3 internal error. Every result ends with one machine-readable
//! `VERDICT key=value ...` line on stdout.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::arith::Nat;
use crate::cert_format::{parse, serialize};
use crate::lucas_lehmer::{lucas_lehmer_test, mersenne};
use crate::pocklington::{
    fermat_number, pepin_test, proth_test, verify_chain, Generator, DEFAULT_SMALL_PRIME_BOUND,
};

pub const EXIT_PROVEN: i32 = 0;
pub const EXIT_NOT_PROVEN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Bases tried by `proth` when `--base` is not given.
const PROTH_BASE_SEARCH: u64 = 1_000;

#[derive(Debug, Parser)]
#[command(
    name = "primecert",
    version,
    about = "Primality tests and Pocklington certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lucas-Lehmer test of the Mersenne number 2^p - 1
    Ll { p: u64 },
    /// Pepin test of the Fermat number 2^(2^k) + 1
    Pepin { k: u32 },
    /// Proth test of h * 2^k + 1
    Proth {
        h: Nat,
        k: u64,
        /// Base to use; by default the smallest passing base up to 1000 is searched
        #[arg(long)]
        base: Option<Nat>,
    },
    /// Generate a Pocklington certificate chain for N
    Generate {
        n: Nat,
        /// Trial-division bound for N - 1 (default: min(isqrt(N - 1), 2^20) at each level)
        #[arg(long)]
        bound: Option<Nat>,
        /// Write the certificate here instead of stdout
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Verify a certificate chain file
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = Nat::from(DEFAULT_SMALL_PRIME_BOUND))]
        small_prime_bound: Nat,
    },
}

/// Runs one command line (`args[0]` is the program name) and returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_PROVEN
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "internal error: {e}");
            EXIT_INTERNAL
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    match command {
        Command::Ll { p } => match lucas_lehmer_test(p) {
            Ok(prime) => {
                let m = mersenne(p).expect("p >= 2 once the test accepted it");
                let word = if prime {
                    "PRIME"
                } else {
                    "COMPOSITE-OR-UNPROVEN"
                };
                writeln!(out, "M_{p} = {m} {word}")?;
                writeln!(
                    out,
                    "VERDICT test=lucas-lehmer p={p} n={m} result={}",
                    result(prime)
                )?;
                Ok(code(prime))
            }
            Err(e) => usage(err, e),
        },
        Command::Pepin { k } => match pepin_test(k) {
            Ok(prime) => {
                let word = if prime {
                    "PRIME"
                } else {
                    "COMPOSITE-OR-UNPROVEN"
                };
                writeln!(out, "F_{k} {word}")?;
                writeln!(
                    out,
                    "VERDICT test=pepin k={k} n={} result={}",
                    fermat_number(k),
                    result(prime)
                )?;
                Ok(code(prime))
            }
            Err(e) => usage(err, e),
        },
        Command::Proth { h, k, base } => {
            if let Err(e) = proth_test(&h, k, &Nat::from(2u32)) {
                return usage(err, e);
            }
            let p = &h * (Nat::from(1u32) << k) + 1u32;
            let bases: Vec<Nat> = match base {
                Some(a) => vec![a],
                None => (2..=PROTH_BASE_SEARCH)
                    .map(Nat::from)
                    .take_while(|a| *a < p)
                    .collect(),
            };
            let found = bases.into_iter().find(|a| proth_test(&h, k, a) == Ok(true));
            let prime = found.is_some();
            let word = if prime {
                "PRIME"
            } else {
                "COMPOSITE-OR-UNPROVEN"
            };
            writeln!(out, "P = {p} {word}")?;
            let base = found.map_or_else(|| "none".to_string(), |a| a.to_string());
            writeln!(
                out,
                "VERDICT test=proth h={h} k={k} n={p} base={base} result={}",
                result(prime)
            )?;
            Ok(code(prime))
        }
        Command::Generate { n, bound, output } => {
            let generator = Generator {
                trial_bound: bound,
                ..Generator::default()
            };
            match generator.certify(&n) {
                Ok(cert) => {
                    let doc = serialize(&cert);
                    match output {
                        Some(path) => {
                            std::fs::write(&path, doc)?;
                            writeln!(out, "GENERATED N={n} nodes={}", cert.node_count())?;
                            writeln!(
                                out,
                                "VERDICT test=generate n={n} file={} result=certified",
                                path.display()
                            )?;
                        }
                        None => write!(out, "{doc}")?,
                    }
                    Ok(EXIT_PROVEN)
                }
                Err(e) => {
                    writeln!(out, "CANNOT-CERTIFY N={n}")?;
                    writeln!(err, "{e}")?;
                    writeln!(out, "VERDICT test=generate n={n} result=cannot-certify")?;
                    Ok(EXIT_NOT_PROVEN)
                }
            }
        }
        Command::Verify {
            file,
            small_prime_bound,
        } => {
            let text = std::fs::read_to_string(&file)?;
            let cert = match parse(&text) {
                Ok(cert) => cert,
                Err(e) => {
                    writeln!(out, "REJECTED parse-error")?;
                    writeln!(err, "{}: {e}", file.display())?;
                    writeln!(
                        out,
                        "VERDICT test=verify result=rejected condition=parse-error"
                    )?;
                    return Ok(EXIT_NOT_PROVEN);
                }
            };
            let report = verify_chain(&cert, &small_prime_bound);
            match report.failure() {
                None => {
                    writeln!(out, "ACCEPTED N={}", cert.n)?;
                    writeln!(out, "VERDICT test=verify n={} result=accepted", cert.n)?;
                    Ok(EXIT_PROVEN)
                }
                Some(f) => {
                    writeln!(out, "REJECTED N={} {}", cert.n, f.condition)?;
                    writeln!(err, "{}: {}", f.path_string(), f.detail)?;
                    writeln!(
                        out,
                        "VERDICT test=verify n={} result=rejected condition={} cause={} path={}",
                        cert.n,
                        f.condition,
                        f.cause,
                        f.path_string()
                    )?;
                    Ok(EXIT_NOT_PROVEN)
                }
            }
        }
    }
}

fn result(prime: bool) -> &'static str {
    if prime {
        "prime"
    } else {
        "unproven"
    }
}

fn code(prime: bool) -> i32 {
    if prime {
        EXIT_PROVEN
    } else {
        EXIT_NOT_PROVEN
    }
}

fn usage(err: &mut dyn Write, e: impl std::fmt::Display) -> std::io::Result<i32> {
    writeln!(err, "error: {e}")?;
    Ok(EXIT_USAGE)
}
