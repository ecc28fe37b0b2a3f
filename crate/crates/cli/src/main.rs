//! `segre`: enriched line counts, local indices and conic-model checks from
//! the command line.
//!
//! Exit codes: 0 on success, 2 for usage or schema errors, 3 for degenerate
//! input, 4 when a verification or comparison fails.

mod commands;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use segre_core::Error;

use report::Format;

#[derive(Parser)]
#[command(name = "segre", version, about = "Arithmetic line counts, local indices and conic models")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,

    /// Upper bound on worker threads for randomized trials.
    #[arg(long = "threads", env = "SEGRE_MAX_THREADS", global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The Euler class of Sym^{2n−1}(S^∨) in GW(Q).
    Euler {
        #[arg(long)]
        n: u32,
    },
    /// The top Chern number c(n).
    Chern {
        #[arg(long)]
        n: u32,
    },
    /// The number binom(n,2) of secants, with the Porteous identity.
    Castelnuovo {
        #[arg(long)]
        n: u32,
    },
    /// Local index of a single line.
    LocalIndex {
        #[arg(long)]
        input: PathBuf,
        /// Ground field, `Q` or `fp:P`; defaults to the file's.
        #[arg(long)]
        ground: Option<String>,
    },
    /// Segre index of a line (n = 2 or 3), compared with its local index.
    SegreIndex {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        ground: Option<String>,
    },
    /// Sum of local indices over a catalog of lines.
    SumIndices {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        ground: Option<String>,
        /// Compare the sum with the Euler class.
        #[arg(long)]
        expect_euler: bool,
    },
    /// Randomized or closed-form verification runs.
    Verify {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `Q` or `fp:P`.
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value_t = 5)]
        coeff_bound: i64,
        /// Parameters for the symmetric family; defaults to 1,…,n.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
    },
    /// Evaluate A, R and det V_B for a conic model file.
    Model {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    ConicIdentity,
    SymmetricFamily,
    SegreEqualsLocal,
}

/// A failure together with its exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonSimpleLine
            | Error::NonGenericGaussCurve(_)
            | Error::DivisionByZero
            | Error::ZeroDivisor
            | Error::ZeroElement => 3,
            Error::CheckFailed(_) => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn run(cli: Cli) -> Result<report::Report, Failure> {
    match cli.command {
        Command::Euler { n } => commands::euler(n),
        Command::Chern { n } => commands::chern(n),
        Command::Castelnuovo { n } => commands::castelnuovo(n),
        Command::LocalIndex { input, ground } => commands::local_index(&input, ground.as_deref()),
        Command::SegreIndex { input, ground } => commands::segre_index(&input, ground.as_deref()),
        Command::SumIndices { input, ground, expect_euler } => {
            commands::sum_indices(&input, ground.as_deref(), expect_euler)
        }
        Command::Verify { mode, n, trials, seed, field, coeff_bound, a } => {
            let opts = verify::Options { mode, n, trials, seed, field, coeff_bound, a, threads: cli.threads };
            verify::run(&opts)
        }
        Command::Model { input } => commands::model(&input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = report.emit(format, &mut out) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(report.exit_code as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
