//! The `formcode` command line.
//!
//! Domain failures exit with status 1 and a single stderr line
//! `error: <kind>: <message>`; usage errors exit with status 2.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use crate::channel::{self, ChannelConfig, RNG_ALGORITHM};
use crate::codes::{self, Family, ParamRow, SubspaceCode};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::irreducibles::{self, CensusResult};
use crate::limits::Limits;
use crate::subspace::Subspace;

#[derive(Parser, Debug)]
#[command(name = "formcode", version, about = "Subspace codes from coprime homogeneous forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Ring {
    /// Field order (a prime power).
    #[arg(long)]
    q: u64,
    /// Index of the last variable; forms live in X0..Xn.
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print N(e) and I(e).
    Count {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        e: usize,
        /// Emit `q,n,e,N_e,I_e` CSV instead of key=value lines.
        #[arg(long)]
        csv: bool,
    },
    /// Stream the forms of a family, one per line.
    Enumerate {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        e: usize,
    },
    /// Build a code and write its serialization.
    Build {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        e: Option<usize>,
        #[arg(long)]
        d: usize,
        /// Newline-delimited generators, required for `--family custom`.
        #[arg(long)]
        generators: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the parameter row of a code.
    Params {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        d: usize,
        /// Build the code and check every pairwise distance.
        #[arg(long)]
        verify: bool,
    },
    /// Parameter grid for e = 1..=e-max, d = e..=d-max.
    Table {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        e_max: usize,
        #[arg(long)]
        d_max: usize,
        #[arg(long, value_parser = parse_family, default_value = "irr")]
        family: Family,
    },
    /// Subspace distance between two subspace files.
    Dist { a: PathBuf, b: PathBuf },
    /// Channel simulation with exhaustive decoding.
    Simulate {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        rho: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Runs the command line against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, Limits::from_env(), out, err) {
        Ok(()) => 0,
        Err(CliError::Domain(e)) => {
            let reason = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "error: {}: {}", e.kind(), reason);
            1
        }
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: io: {e}");
            1
        }
    }
}

enum CliError {
    Domain(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn named_family(family: Family) -> Result<Family> {
    match family {
        Family::Custom => Err(Error::Parse(
            "family `custom` needs --generators and is only supported by `build`".into(),
        )),
        f => Ok(f),
    }
}

fn dispatch(
    command: Command,
    limits: Limits,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::result::Result<(), CliError> {
    match command {
        Command::Count { ring, e, csv } => {
            let field = Field::with_order(ring.q)?;
            let census = irreducibles::census(&field, ring.n, e, false, limits)?;
            if csv {
                writeln!(out, "{}", CensusResult::CSV_HEADER)?;
                writeln!(out, "{}", census.csv_row())?;
            } else {
                writeln!(out, "N={}", census.normalized)?;
                writeln!(out, "I={}", census.irreducible)?;
            }
        }
        Command::Enumerate { family, ring, e } => {
            let field = Field::with_order(ring.q)?;
            let forms = codes::family_generators(&field, ring.n, e, named_family(family)?, limits)?;
            for f in forms {
                writeln!(out, "{f}")?;
            }
        }
        Command::Build {
            family,
            ring,
            e,
            d,
            generators,
            out: path,
        } => {
            let field = Field::with_order(ring.q)?;
            let gens = match (family, generators) {
                (Family::Custom, Some(path)) => {
                    let text = fs::read_to_string(path)?;
                    irreducibles::parse_form_list(&field, ring.n, &text)?
                }
                (Family::Custom, None) => {
                    return Err(Error::Parse("family `custom` needs --generators".into()).into())
                }
                (named, _) => {
                    let e = e.ok_or_else(|| Error::Parse("--e is required for named families".into()))?;
                    codes::family_generators(&field, ring.n, e, named, limits)?
                }
            };
            let code = codes::build_code(gens, d, family, limits)?;
            let text = code.to_string();
            match path {
                Some(p) => fs::write(p, text)?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Params {
            family,
            ring,
            e,
            d,
            verify,
        } => {
            let family = named_family(family)?;
            let field = Field::with_order(ring.q)?;
            let size = if verify {
                let code = codes::family_code(&field, ring.n, e, d, family, limits)?;
                code.params(true, limits)?;
                BigUint::from(code.len())
            } else {
                codes::family_size(ring.q, ring.n, e, family)?
            };
            let row = ParamRow::new(ring.q, ring.n, e, d, family, &size)?;
            writeln!(out, "{}", ParamRow::CSV_HEADER)?;
            writeln!(out, "{}", row.csv())?;
        }
        Command::Table {
            ring,
            e_max,
            d_max,
            family,
        } => {
            let family = named_family(family)?;
            Field::with_order(ring.q)?;
            writeln!(out, "{}", ParamRow::CSV_HEADER)?;
            let sizes: Vec<BigUint> = match family {
                Family::Irreducible => irreducibles::irreducible_counts(ring.q, ring.n, e_max),
                _ => (1..=e_max)
                    .map(|e| codes::family_size(ring.q, ring.n, e, family))
                    .collect::<Result<_>>()?,
            };
            for (e, size) in (1..=e_max).zip(&sizes) {
                for d in e..=d_max {
                    let row = ParamRow::new(ring.q, ring.n, e, d, family, size)?;
                    writeln!(out, "{}", row.csv())?;
                }
            }
        }
        Command::Dist { a, b } => {
            let va = Subspace::parse(&fs::read_to_string(a)?, true)?.subspace;
            let vb = Subspace::parse(&fs::read_to_string(b)?, true)?.subspace;
            writeln!(out, "{}", va.dist(&vb)?)?;
        }
        Command::Simulate {
            family,
            ring,
            e,
            d,
            rho,
            t,
            trials,
            seed,
        } => {
            let field = Field::with_order(ring.q)?;
            let code: SubspaceCode = codes::family_code(&field, ring.n, e, d, named_family(family)?, limits)?;
            let cfg = ChannelConfig { rho, t, seed };
            let report = channel::simulate(&code, &cfg, trials)?;
            writeln!(err, "rng: {RNG_ALGORITHM}")?;
            writeln!(out, "{}", channel::SimulationReport::CSV_HEADER)?;
            writeln!(out, "{}", report.csv_row(&code, &cfg))?;
        }
    }
    Ok(())
}
