//! `resolvent-inv`: batch front end for resolvent-series inversion.
//!
//! JSON problem files in, CSV solutions out. Machine-readable results go to
//! stdout and diagnostics to stderr. Exit codes: 0 success, 1 invalid input,
//! 2 hypotheses violated, 3 singular or numerically degenerate, 4 a sweep
//! that failed to converge.

mod commands;
mod demo;
mod error;
mod problem;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use crate::error::{CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "resolvent-inv",
    version,
    about = "Left inverses of resolvent-series operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report whether the problem satisfies the inversion hypotheses.
    Check {
        problem: PathBuf,
        /// Required gap between the pole hull and the spectrum.
        #[arg(long, default_value_t = 0.0)]
        margin: f64,
        /// Root clustering tolerance for filter problems.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Solve the problem for an input signal.
    Invert {
        problem: PathBuf,
        /// Signal file (CSV `re,im` or JSON pairs); overrides the file's `signal`.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Where to write the solution CSV; stdout if omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 0.0)]
        margin: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Grid size override for integral problems.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run a Tikhonov regularization sweep on a matrix problem.
    Sweep {
        problem: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build a nonnegative series on the given poles that vanishes at LAMBDA.
    Counterexample {
        /// Pole as `re,im` (repeatable).
        #[arg(long = "pole", required = true, allow_hyphen_values = true, value_parser = commands::parse_complex)]
        poles: Vec<Complex64>,
        #[arg(long, allow_hyphen_values = true, value_parser = commands::parse_complex)]
        lambda: Complex64,
    },
    /// Run a built-in example; with --output, also write its files.
    Demo {
        #[arg(value_enum)]
        kind: demo::DemoKind,
        /// Problem size (signal length, grid points or matrix dimension).
        #[arg(long)]
        n: Option<usize>,
        /// Directory for the problem and signal files.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Check { problem, margin, tol } => {
            let lp = problem::load(&problem)?;
            let (json, ok) = commands::check(&lp, margin, tol)?;
            print!("{json}");
            if ok {
                Ok(())
            } else {
                Err(CliError::Inadmissible("see report".into()))
            }
        }
        Command::Invert {
            problem,
            input,
            output,
            margin,
            tol,
            n,
        } => {
            let lp = problem::load(&problem)?;
            commands::invert(&lp, input.as_deref(), output.as_deref(), margin, tol, n)
        }
        Command::Sweep { problem, output } => commands::sweep(&problem::load(&problem)?, output.as_deref()),
        Command::Counterexample { poles, lambda } => {
            print!("{}", commands::counterexample(&poles, lambda)?);
            Ok(())
        }
        Command::Demo { kind, n, output } => {
            print!("{}", demo::run(kind, n, output.as_deref())?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("RESOLVENT_INV_LOG")).init();
    log::info!("resolvent-inv {}", env!("CARGO_PKG_VERSION"));
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors share the invalid-input code; help and version exit 0
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
