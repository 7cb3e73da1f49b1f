//! `symchar`: weight systems, closed characters of symmetric powers, and their
//! cross-checks from the command line.

mod commands;

use std::io::{ErrorKind, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symchar::{CartanType, Weight};

/// Environment variable holding the worker thread count.
const THREADS_VAR: &str = "SYMCHAR_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "symchar",
    version,
    about = "Characters of symmetric powers of simple Lie algebra modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Module {
    /// Cartan type, e.g. A2, B3, G2.
    #[arg(long)]
    pub algebra: CartanType,

    /// Highest weight in fundamental-weight coordinates, e.g. 1,1.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Weight,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weight multiplicities of V(lambda).
    Weights(Module),
    /// Partial fraction coefficients A_{nu,k} of the Molien series.
    Pfd(Module),
    /// Char S^N V(lambda).
    Char {
        #[command(flatten)]
        module: Module,
        #[arg(long = "N")]
        n: u64,
    },
    /// Multiplicity of the weight mu in S^N V(lambda).
    Mult {
        #[command(flatten)]
        module: Module,
        #[arg(long = "N")]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        mu: Weight,
    },
    /// Split of Char S^N V(lambda) into Weyl orbit summands.
    Orbits {
        #[command(flatten)]
        module: Module,
        #[arg(long = "N")]
        n: u64,
    },
    /// Weight matrix, its properties, and phi_A against multiplicities up to N.
    Vpart {
        #[command(flatten)]
        module: Module,
        #[arg(long = "N")]
        n: u64,
    },
    /// Compares the closed character with the oracles. Without a module, runs
    /// the standard suite.
    Verify {
        #[arg(long, requires = "lambda")]
        algebra: Option<CartanType>,
        #[arg(long, allow_hyphen_values = true, requires = "algebra")]
        lambda: Option<Weight>,
        /// Largest N checked for a single module.
        #[arg(long = "N", default_value_t = 4)]
        n: u64,
    },
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("{THREADS_VAR}={raw:?} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    let result = match cli.command {
        Command::Weights(m) => commands::weights(&m, cli.format),
        Command::Pfd(m) => commands::pfd(&m, cli.format),
        Command::Char { module, n } => commands::character(&module, n, cli.format),
        Command::Mult { module, n, mu } => commands::mult(&module, n, &mu, cli.format),
        Command::Orbits { module, n } => commands::orbits(&module, n, cli.format),
        Command::Vpart { module, n } => commands::vpart(&module, n, cli.format),
        Command::Verify { algebra, lambda, n } => {
            let single = algebra
                .zip(lambda)
                .map(|(algebra, lambda)| Module { algebra, lambda });
            commands::verify(single.as_ref(), n, cli.format)
        }
    };
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", out.text) {
                Err(e) if e.kind() != ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
                _ => ExitCode::from(if out.ok { 0 } else { 2 }),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
    }
}
