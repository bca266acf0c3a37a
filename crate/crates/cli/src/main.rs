mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use symcube::scalar::DEFAULT_PRECISION_CAP;

#[derive(Debug, Parser)]
#[command(name = "symcube", version, about = "Symmetric cube transfer GL2 -> GSp4 on Hecke eigensystems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Digit cap for p-adic approximations (Hensel lifting, logarithms)
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_CAP)]
    pub precision: u32,

    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symmetric cube lift of GL2 eigensystems
    Lift {
        input: PathBuf,
        /// Branch 1..=8; omit to lift spherical values only
        #[arg(long)]
        branch: Option<u8>,
    },
    /// Both p-stabilizations of unstabilized GL2 eigensystems
    Stabilize { input: PathBuf },
    /// U_p slopes of stabilized eigensystems
    Slope { input: PathBuf },
    /// Decide membership of GSp4 eigensystems in the symmetric cube locus
    Classify {
        input: PathBuf,
        /// Comma-separated primes to test (default: every spherical prime)
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long)]
        allow_cubic_ext: bool,
    },
    /// Twist by a Dirichlet character
    Twist {
        input: PathBuf,
        /// trivial, legendre:<q>, or file:<path> holding a character JSON object
        #[arg(long, default_value = "trivial")]
        character: String,
    },
    /// Tame level of the symmetric cube lift
    Level { n: u64 },
    /// Hodge-Tate weights and the weight-space map at a classical weight
    Weights {
        k: i64,
        #[arg(long, default_value_t = 5)]
        p: u64,
    },
    /// Scan GSp4 eigensystems for congruences with lifts of GL2 eigensystems
    Congruences {
        gsp4: PathBuf,
        gl2: PathBuf,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 10)]
        max_depth: u32,
        /// Worker threads (output order does not depend on it)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Seeded identity checks against the matrix oracle
    OracleSuite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
