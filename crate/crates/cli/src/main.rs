//! `solve`: closure, Bellman, path and spectral computations over semirings
//! from JSON problem files.
//!
//! Exit codes: 0 success, 2 input error, 3 mathematical failure.

mod commands;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use commands::{CliError, CliResult, PathProblem, SolveOptions};
use semiring_core::Profile;

#[derive(Parser)]
#[command(name = "solve", version, about = "Semiring closure and interval Bellman solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Problem file (JSON).
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Closure A* of a matrix, interval matrix or graph.
    Closure {
        #[command(flatten)]
        io: Io,
    },
    /// Solve X = AX ⊕ B for a point or interval problem.
    Solve {
        #[command(flatten)]
        io: Io,
        /// Report the solution as intervals even for a point problem.
        #[arg(long)]
        interval: bool,
        /// Also run X_{k+1} = A X_k ⊕ B from X_0 = O.
        #[arg(long)]
        iterate: bool,
        /// Iteration budget (default 2n + 2).
        #[arg(long, value_name = "K")]
        max_iter: Option<usize>,
        /// Evaluate ρ(upper A) ⪯ 𝟏.
        #[arg(long)]
        check_spectral: bool,
        /// Check the solution against N sampled point problems.
        #[arg(long, value_name = "N", default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Path problems on a graph.
    Path {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum)]
        problem: PathProblem,
        /// Number of steps for the profit problem (unbounded if omitted).
        #[arg(long, value_name = "K")]
        horizon: Option<usize>,
    },
    /// Eigenvalue, spectral radius and block structure.
    Eigen {
        #[command(flatten)]
        io: Io,
    },
    /// Run the law suite against a named semiring.
    Check {
        #[arg(long)]
        semiring: String,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn read(path: &PathBuf) -> CliResult<semiring_core::codec::ProblemFile> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    commands::load(&text)
}

fn emit(value: &Value, out: Option<&PathBuf>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Closure { io } => emit(&commands::closure(&read(&io.input)?)?, io.out.as_ref()),
        Command::Solve {
            io,
            interval,
            iterate,
            max_iter,
            check_spectral,
            samples,
            seed,
        } => {
            let opts = SolveOptions {
                interval,
                iterate,
                max_iter,
                check_spectral,
                samples,
                seed,
            };
            emit(&commands::solve(&read(&io.input)?, &opts)?, io.out.as_ref())
        }
        Command::Path { io, problem, horizon } => {
            emit(&commands::path(&read(&io.input)?, problem, horizon)?, io.out.as_ref())
        }
        Command::Eigen { io } => emit(&commands::eigen(&read(&io.input)?)?, io.out.as_ref()),
        Command::Check {
            semiring,
            cases,
            seed,
            out,
        } => {
            let p: Profile = semiring.parse().map_err(|e| CliError::Input(format!("{e}")))?;
            emit(&commands::check(p, cases, seed)?, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SOLVER_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
