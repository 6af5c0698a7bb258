//! `gsemi`: JSON front end for arrangements, simplicial posets and group actions.
//!
//! Exit status is 0 on success, 1 when a check fails and 2 on input errors.

mod commands;
mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CorpusKind, Outcome};
use input::CliError;

#[derive(Parser)]
#[command(name = "gsemi", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Reject arrangements whose characters do not span.
    #[arg(long, global = true)]
    essential_required: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Poset of layers of an arrangement.
    Layers { input: PathBuf },
    /// Poset of independent layers of an arrangement.
    Independence { input: PathBuf },
    /// Tutte polynomial of an arrangement.
    Tutte { input: PathBuf },
    /// Per-basis lattice indices and their lcm.
    Delta { input: PathBuf },
    /// h- and characteristic polynomials.
    Polys { input: PathBuf },
    /// Integral reduced homology of an order complex or complex.
    Homology { input: PathBuf },
    /// Cohen-Macaulay test in the given characteristics.
    CmCheck {
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        chars: Option<Vec<u64>>,
    },
    /// Face-ring presentation and Hilbert function comparison.
    FaceRing {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Quotient poset of an action and the simplicial-quotient check.
    Quotient { input: PathBuf },
    /// Shelling order of an orbit complex of a decoupled action.
    Shelling {
        input: PathBuf,
        /// Vertices of the face whose orbit is shelled (default: first facet).
        #[arg(long, value_delimiter = ',')]
        face: Option<Vec<String>>,
    },
    /// Invariant ring against the face ring of the quotient.
    InvariantsCheck {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Seeded random inputs.
    Corpus {
        #[arg(long, value_enum, default_value = "arrangements")]
        kind: CorpusKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        count: usize,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let ess = cli.essential_required;
    match &cli.command {
        Command::Layers { input } => commands::layers(&input::load(input)?, ess),
        Command::Independence { input } => commands::independence(&input::load(input)?, ess),
        Command::Tutte { input } => commands::tutte(&input::load(input)?, ess),
        Command::Delta { input } => commands::delta(&input::load(input)?, ess),
        Command::Polys { input } => commands::polys(&input::load(input)?, ess),
        Command::Homology { input } => commands::homology(&input::load(input)?, ess),
        Command::CmCheck { input, chars } => commands::cm_check(&input::load(input)?, chars.clone(), ess),
        Command::FaceRing { input, degree } => {
            commands::check_degree(*degree)?;
            commands::face_ring(&input::load(input)?, *degree)
        }
        Command::Quotient { input } => commands::quotient(input::load(input)?),
        Command::Shelling { input, face } => commands::shelling(&input::load(input)?, face.clone()),
        Command::InvariantsCheck { input, degree } => {
            commands::check_degree(*degree)?;
            commands::invariants_check(input::load(input)?, *degree)
        }
        Command::Corpus { kind, seed, count } => Ok(commands::corpus(*kind, *seed, *count)),
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(&outcome.report).expect("JSON value");
    text.push('\n');
    match &cli.output {
        Some(path) => {
            fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|o| emit(&cli, &o).map(|()| o.ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("gsemi: {e}");
            ExitCode::from(2)
        }
    }
}
