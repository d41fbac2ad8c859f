//! `substencil`: weight-functions of Neville substencil subdivisions.
//!
//! Exit status: 0 on success, 1 on invalid input (diagnostic as a JSON
//! object on stderr), 2 when `verify` finds a failing case.

mod commands;
mod output;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use substencil::scalar::Scalar;
use substencil::{Error, Stencil, Q};

use output::{Format, Output};

#[derive(Parser, Debug)]
#[command(name = "substencil", version, about = "Weight-functions for Neville substencil subdivisions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Polynomial weights sigma_{K_s,k_s} and constants varsigma.
    Weights {
        #[command(flatten)]
        common: Common,
        /// Subdivision level; every level 1..M-1 when omitted.
        #[arg(long)]
        ks: Option<usize>,
    },
    /// Rational weights for the n-th derivative of the interpolant.
    DerivWeights {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ks: Option<usize>,
        /// Derivative order.
        #[arg(long)]
        n: usize,
    },
    /// Interval on which every weight lies in [0, 1].
    Positivity {
        #[command(flatten)]
        common: Common,
        /// Subdivision level; every level 1..ceil(M/2) when omitted.
        #[arg(long)]
        ks: Option<usize>,
    },
    /// Weight values at given points.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ks: Option<usize>,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Evaluation point, e.g. "1/2" (repeatable).
        #[arg(long = "at", required = true)]
        at: Vec<String>,
    },
    /// Randomized verification of every family up to `--max-m`.
    Verify {
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(2..=12))]
        max_m: u64,
        /// Random stencils per case.
        #[arg(long, default_value_t = 25)]
        trials: usize,
        /// Random sample points per stencil.
        #[arg(long, default_value_t = 2)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Stencil descriptor as inline JSON.
    #[arg(long, conflicts_with = "stencil_file", required_unless_present = "stencil_file")]
    stencil: Option<String>,
    /// Path to a stencil descriptor JSON file.
    #[arg(long)]
    stencil_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

enum Failure {
    Input(&'static str, String),
    Verification(Output, Format),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.kind(), e.to_string())
    }
}

impl Common {
    fn stencil<T: Scalar>(&self) -> Result<Stencil<T>, Failure> {
        let text = match (&self.stencil, &self.stencil_file) {
            (Some(s), _) => s.clone(),
            (None, Some(path)) => fs::read_to_string(path)
                .map_err(|e| Failure::Input("io", format!("{}: {e}", path.display())))?,
            (None, None) => return Err(Failure::Input("usage", "--stencil or --stencil-file is required".into())),
        };
        Ok(Stencil::from_json_str(&text)?)
    }
}

fn run_with<T: Scalar>(command: &Command) -> Result<(Output, Format), Failure> {
    Ok(match command {
        Command::Weights { common, ks } => (commands::weights(&common.stencil::<T>()?, *ks)?, common.format),
        Command::DerivWeights { common, ks, n } => (commands::deriv(&common.stencil::<T>()?, *ks, *n)?, common.format),
        Command::Positivity { common, ks } => (commands::positivity(&common.stencil::<T>()?, *ks)?, common.format),
        Command::Eval { common, ks, n, at } => (commands::eval(&common.stencil::<T>()?, *ks, *n, at)?, common.format),
        Command::Verify { format, max_m, trials, points, seed, .. } => {
            let (out, pass) = commands::verify::<T>(*max_m as usize, *trials, *points, *seed);
            if !pass {
                return Err(Failure::Verification(out, *format));
            }
            (out, *format)
        }
    })
}

fn mode(command: &Command) -> Mode {
    match command {
        Command::Weights { common, .. }
        | Command::DerivWeights { common, .. }
        | Command::Positivity { common, .. }
        | Command::Eval { common, .. } => common.mode,
        Command::Verify { mode, .. } => *mode,
    }
}

fn diagnostic(kind: &str, message: &str) {
    eprintln!("{}", json!({ "error": kind, "message": message }));
}

fn emit(out: &Output, format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    out.write(format, &mut lock)?;
    lock.flush()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            diagnostic("usage", e.render().to_string().trim());
            return ExitCode::from(1);
        }
    };
    let result = match mode(&cli.command) {
        Mode::Exact => run_with::<Q>(&cli.command),
        Mode::Float => run_with::<f64>(&cli.command),
    };
    match result {
        Ok((out, format)) => match emit(&out, format) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                diagnostic("io", &e.to_string());
                ExitCode::from(1)
            }
        },
        Err(Failure::Input(kind, message)) => {
            diagnostic(kind, &message);
            ExitCode::from(1)
        }
        Err(Failure::Verification(out, format)) => {
            let _ = emit(&out, format);
            diagnostic("verification", "one or more cases failed");
            ExitCode::from(2)
        }
    }
}
