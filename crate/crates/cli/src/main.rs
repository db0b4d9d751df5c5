use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gradslice::verification::Tolerances;

mod commands;
mod config;
mod exit;
mod report;

use commands::{Format, Mode, Output};
use config::ModelConfig;
use exit::Exit;

/// Polynomial solutions of Rabi-type ODEs by gradation slicing.
#[derive(Parser)]
#[command(name = "gradslice", version)]
struct Args {
    #[command(subcommand)]
    command: Command,

    /// Model config (JSON)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,

    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Relative residual tolerance for numeric certificates
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Seed for the negative-control shifts in `verify`
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Grade signature, slices and alternative of the model operator
    Slice,
    /// Energy on the n-th baseline with the recurrence solution
    Baseline,
    /// Cleared constraint polynomials in the coupling
    Constraint,
    /// Juddian points with their certificates
    Roots {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Constraint (and Kus) values on a uniform grid, as CSV
    Sweep,
    /// Re-run every certificate on a `roots` report
    Verify {
        /// JSON written by `roots`
        input: PathBuf,
    },
}

fn run(args: &Args) -> Result<Output, Exit> {
    let mut tol = Tolerances::default();
    if let Some(t) = args.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Exit::config(format!("--tol must be a positive number, got {t}")));
        }
        tol.residual_rel = t;
    }
    let cfg = || -> Result<ModelConfig, Exit> {
        let path = args.config.as_ref().ok_or_else(|| Exit::config("--config <path> is required"))?;
        ModelConfig::load(path)
    };
    match &args.command {
        Command::Slice => commands::slice(&cfg()?),
        Command::Baseline => commands::baseline(&cfg()?),
        Command::Constraint => commands::constraint(&cfg()?),
        Command::Roots { format } => commands::roots_output(&cfg()?, args.mode, &tol, *format),
        Command::Sweep => commands::sweep(&cfg()?, args.mode),
        Command::Verify { input } => {
            let text = std::fs::read_to_string(input).map_err(|e| Exit::config(format!("cannot read {}: {e}", input.display())))?;
            commands::verify(&text, &tol, args.seed)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = run(&args).and_then(|out| {
        match &args.out {
            Some(path) => std::fs::write(path, &out.text).map_err(|e| Exit::config(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{}", out.text),
        }
        out.failure.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gradslice: {e}");
            ExitCode::from(e.code)
        }
    }
}
