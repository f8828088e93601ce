//! `tpalg`: exact δ-derivations, transposed Poisson structures and Hom-Lie
//! checks on Lie algebras from the built-in catalog or a file.
//!
//! Exit status: 0 ok, 1 an identity fails, 2 bad input, 3 search unresolved.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{AlgebraSpec, Emit, GradingChoice, InputError};

#[derive(Parser, Debug)]
#[command(name = "tpalg", version, about = "Exact computations on Lie algebras over ℚ")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Log system sizes to stderr.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe an algebra and check its axioms.
    Algebra {
        #[command(flatten)]
        spec: AlgebraSpec,
        /// List every nonzero bracket.
        #[arg(long)]
        show: bool,
        /// Check antisymmetry and the Jacobi identity.
        #[arg(long)]
        check_jacobi: bool,
        /// Check the file grading, or the standard one for a Schrödinger algebra.
        #[arg(long)]
        check_grading: bool,
    },
    /// Solve for the δ-derivations.
    Derivations {
        #[command(flatten)]
        spec: AlgebraSpec,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        delta: String,
        #[arg(long, value_enum, default_value_t = GradingChoice::None)]
        grading: GradingChoice,
        #[arg(long, value_enum, default_value_t = Emit::Basis)]
        emit: Emit,
    },
    /// Check a product file or search for transposed Poisson structures.
    Tp {
        #[command(flatten)]
        spec: AlgebraSpec,
        #[arg(long, conflicts_with = "search")]
        check: Option<PathBuf>,
        #[arg(long)]
        search: bool,
        /// Annotate families with a representative up to isomorphism.
        #[arg(long, requires = "search")]
        normalize: bool,
    },
    /// Check the Hom-Lie identity for a linear map.
    Homlie {
        #[command(flatten)]
        spec: AlgebraSpec,
        #[arg(long, conflicts_with = "from_derivation")]
        map: Option<PathBuf>,
        /// 1-based index into the computed ½-derivation basis.
        #[arg(long)]
        from_derivation: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Algebra { spec, show, check_jacobi, check_grading } => {
            commands::algebra(spec, *show, *check_jacobi, *check_grading)
        }
        Command::Derivations { spec, delta, grading, emit } => {
            commands::derivations(spec, delta, *grading, *emit, cli.verbose)
        }
        Command::Tp { spec, check, search, normalize } => {
            commands::tp(spec, check.as_deref(), *search, *normalize, cli.verbose)
        }
        Command::Homlie { spec, map, from_derivation } => commands::homlie(spec, map.as_deref(), *from_derivation),
    };
    match result {
        Ok((report, outcome)) => {
            let value = report.to_value(start.elapsed());
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
                Format::Text => print!("{}", report::to_text(&value)),
            }
            ExitCode::from(outcome as u8)
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
