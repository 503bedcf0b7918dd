//! Line-oriented command-line front end.
//!
//! [`run`] parses arguments, dispatches a subcommand and returns the process
//! exit status: 0 on success, 1 on a domain error (one diagnostic line on
//! the error stream), 2 on a usage error.

use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use perm321::catalan::{self, verify_identity_chain};
use perm321::oracle::{Oracle, LONG_ORACLE_CAP};
use perm321::perm::parse_one_line;
use perm321::{
    compose, count_pattern, decompose, with_threads, Decomposition, Error, Exec, Generator,
    Permutation, ValueSequence,
};

#[derive(Debug, Parser)]
#[command(
    name = "perm321",
    version,
    about = "Exact counting, generation and decomposition of permutations with one 321 pattern"
)]
struct Cli {
    /// Worker threads for enumeration and brute force (output does not depend on it)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,

    /// Write progress lines to stderr
    #[arg(long, global = true)]
    progress: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count occurrences of a pattern in a permutation
    Count {
        #[arg(long, value_parser = ints)]
        perm: Ints,
        #[arg(long, value_parser = ints, default_value = "3 2 1")]
        pattern: Ints,
    },
    /// Number of n-permutations containing 321 exactly once
    Noonan {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Generation cap for the bijection method
        #[arg(long)]
        cap: Option<usize>,
        /// Allow the oracle method to run at n = 11
        #[arg(long)]
        allow_long: bool,
    },
    /// Check convolution = Catalan form = closed form for 3..=max-n
    Verify {
        #[arg(long)]
        max_n: u64,
        /// Print only the summary line
        #[arg(long)]
        summary: bool,
    },
    /// Stream one permutation per line
    Enumerate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Middle value; required for sigma2, and for sigma1 defaults to --n
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Print the decomposition of a permutation with exactly one 321
    Decompose {
        #[arg(long, value_parser = ints)]
        perm: Ints,
    },
    /// Rebuild a permutation from b, sigma1 and sigma2
    Compose {
        #[arg(long)]
        b: u32,
        #[arg(long, value_parser = ints)]
        sigma1: Ints,
        #[arg(long, value_parser = ints)]
        sigma2: Ints,
    },
    /// Brute-force count of n-permutations with exactly k occurrences of 321
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: u64,
        /// Allow n = 11 (long runtime)
        #[arg(long)]
        allow_long: bool,
    },
    /// Print "n value" pairs
    Seq {
        #[arg(long, value_enum)]
        what: Sequence,
        #[arg(long)]
        max_n: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Catalan,
    Convolution,
    Oracle,
    Bijection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Avoiders,
    Sigma1,
    Sigma2,
    Noonan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sequence {
    Catalan,
    Noonan,
}

/// Whitespace-separated integers exactly as given on the command line.
#[derive(Debug, Clone)]
struct Ints(Vec<i64>);

fn ints(s: &str) -> Result<Ints, String> {
    parse_one_line(s).map(Ints).map_err(|e| e.to_string())
}

/// Failure while executing a parsed command.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    2
                }
            };
        }
    };

    let threads = cli.threads.map(|t| t as usize);
    let progress = cli.progress;
    let result = with_threads(threads, || execute(cli.command, progress, out, &mut *err));
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        // a closed pipe on stdout is not worth a diagnostic
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(
    command: Command,
    progress: bool,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> Result<(), Failure> {
    let mut note = |msg: String| {
        if progress {
            let _ = writeln!(err, "{msg}");
        }
    };
    match command {
        Command::Count { perm, pattern } => {
            let perm = Permutation::from_one_line(&perm.0)?;
            let pattern = Permutation::from_one_line(&pattern.0)?;
            writeln!(out, "{}", count_pattern(&perm, &pattern))?;
        }
        Command::Noonan {
            n,
            method,
            cap,
            allow_long,
        } => {
            if n == 0 {
                return Err(Error::InvalidN("n must be at least 1".into()).into());
            }
            let value = match method {
                Method::Closed => catalan::noonan_closed(n)?,
                Method::Catalan => catalan::noonan_catalan_form(n)?,
                Method::Convolution => catalan::noonan_convolution(n),
                Method::Oracle => {
                    let oracle = oracle_for(allow_long);
                    note(format!("oracle: scanning all permutations of length {n}"));
                    oracle.count_exactly_k(n as usize, &Permutation::reverse_identity(3), 1)?
                }
                Method::Bijection => generator(cap).count_noonan(n as usize)?,
            };
            writeln!(out, "{value}")?;
        }
        Command::Verify { max_n, summary } => {
            let rows = verify_identity_chain(max_n, Exec::default())?;
            let failed = rows.iter().filter(|r| !r.holds()).count();
            if !summary {
                for r in &rows {
                    if r.holds() {
                        writeln!(out, "n={} PASS {}", r.n, r.closed)?;
                    } else {
                        writeln!(
                            out,
                            "n={} FAIL convolution={} catalan={} closed={}",
                            r.n, r.convolution, r.catalan_form, r.closed
                        )?;
                    }
                }
            }
            let verdict = if failed == 0 { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "summary: {verdict} ({} checked, {failed} failed)",
                rows.len()
            )?;
            if failed > 0 {
                return Err(Error::ConstraintViolation(format!(
                    "identity chain failed for {failed} values of n"
                ))
                .into());
            }
        }
        Command::Enumerate { family, n, b, cap } => {
            let gen = generator(cap);
            let mut emit = |block: Vec<Permutation>| -> Result<(), Failure> {
                for p in block {
                    writeln!(out, "{p}")?;
                }
                Ok(())
            };
            match family {
                Family::Avoiders => gen.avoiders_in_order(n, &mut emit)?,
                Family::Noonan => gen.noonan_in_order(n, &mut emit)?,
                Family::Sigma1 => {
                    for p in gen.sigma1(b.unwrap_or(n))? {
                        writeln!(out, "{p}")?;
                    }
                }
                Family::Sigma2 => {
                    let Some(b) = b else {
                        return Err(Failure::Usage("--family sigma2 requires --b".into()));
                    };
                    for s in gen.sigma2(b, n)? {
                        writeln!(out, "{s}")?;
                    }
                }
            }
        }
        Command::Decompose { perm } => {
            let perm = Permutation::from_one_line(&perm.0)?;
            writeln!(out, "{}", decompose(&perm)?)?;
        }
        Command::Compose { b, sigma1, sigma2 } => {
            let sigma1 = Permutation::from_one_line(&sigma1.0)
                .map_err(|e| Error::ConstraintViolation(format!("sigma1: {e}")))?;
            let sigma2 = to_value_sequence(&sigma2.0)?;
            let d = Decomposition::new(b, sigma1, sigma2)?;
            writeln!(out, "{}", compose(&d)?)?;
        }
        Command::Oracle { n, k, allow_long } => {
            let oracle = oracle_for(allow_long);
            if n == LONG_ORACLE_CAP && allow_long {
                note(format!(
                    "warning: scanning all {n}! permutations, this takes a long time"
                ));
            }
            let count = oracle.count_exactly_k(n, &Permutation::reverse_identity(3), k)?;
            writeln!(out, "{count}")?;
        }
        Command::Seq { what, max_n } => match what {
            Sequence::Catalan => {
                for (n, c) in catalan::catalan_table(max_n as usize).iter().enumerate() {
                    writeln!(out, "{n} {c}")?;
                }
            }
            Sequence::Noonan => {
                for n in 1..=max_n {
                    writeln!(out, "{n} {}", catalan::noonan_closed(n)?)?;
                }
            }
        },
    }
    out.flush()?;
    Ok(())
}

fn generator(cap: Option<usize>) -> Generator {
    cap.map(Generator::with_cap).unwrap_or_default()
}

fn oracle_for(allow_long: bool) -> Oracle {
    if allow_long {
        Oracle::default().allow_long_runs()
    } else {
        Oracle::default()
    }
}

fn to_value_sequence(raw: &[i64]) -> Result<ValueSequence, Error> {
    let values = raw
        .iter()
        .map(|&v| {
            u32::try_from(v).map_err(|_| {
                Error::ConstraintViolation(format!("sigma2: value {v} is not positive"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    ValueSequence::new(values).map_err(|e| Error::ConstraintViolation(format!("sigma2: {e}")))
}
