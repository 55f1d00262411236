use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use torsionlab::exactfield::literal::parse_scalar;
use torsionlab_cli::commands::{self, MtOptions, Report};
use torsionlab_cli::document::parse_modulus;
use torsionlab_cli::{CliError, CliResult, ErrorKind, JobDocument};

/// Exact Reidemeister-type torsion of cochain complexes, cell complexes and
/// mapping tori.
#[derive(Parser, Debug)]
#[command(name = "torsionlab", version)]
struct Cli {
    /// Print the result as one JSON object.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Torsion of a [complex]; acyclic unless --h-bases is given.
    Torsion {
        file: PathBuf,
        /// Use the [hbases] representatives (echelon ones if absent).
        #[arg(long)]
        h_bases: bool,
    },
    /// All tau-chains of a [complex] with their minors and signs.
    Taulist { file: PathBuf },
    /// Torsion of a [cellcomplex] under the [representation].
    Mt {
        file: PathBuf,
        /// Multiply the lift of CELL (`dim:index`) by WORD first.
        #[arg(long, num_args = 2, value_names = ["CELL", "WORD"])]
        shift_euler: Option<Vec<String>>,
        /// Reverse the cohomology orientation.
        #[arg(long)]
        flip_orientation: bool,
    },
    /// Torsion as a rational function with its rational zeros and poles.
    Scan {
        file: PathBuf,
        /// Also compare with direct specialization at the integers LO..=HI.
        #[arg(long, value_name = "LO:HI", allow_hyphen_values = true)]
        range: Option<String>,
    },
    /// Compare the cone torsion of a [mappingtorus] with the Lefschetz zeta function.
    Maptorus { file: PathBuf },
    /// Check the fusion identity of a [sequence].
    Fusion { file: PathBuf },
    /// Argument of the torsion, in double precision.
    Arg {
        file: PathBuf,
        /// Gaussian rational point to specialize at first.
        #[arg(long, value_name = "POINT", allow_hyphen_values = true)]
        at: Option<String>,
        /// `pi` or `2pi`.
        #[arg(long)]
        modulus: Option<String>,
    },
    /// Print the document in canonical form.
    Fmt { file: PathBuf },
}

fn load(path: &PathBuf) -> CliResult<JobDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))?;
    JobDocument::parse(&text)
}

fn run(command: Command) -> CliResult<Report> {
    match command {
        Command::Torsion { file, h_bases } => commands::torsion(&load(&file)?, h_bases),
        Command::Taulist { file } => commands::taulist(&load(&file)?),
        Command::Mt {
            file,
            shift_euler,
            flip_orientation,
        } => {
            let opts = MtOptions {
                shift_euler: shift_euler.map(|v| (v[0].clone(), v[1].clone())),
                flip_orientation,
            };
            commands::mt(&load(&file)?, &opts)
        }
        Command::Scan { file, range } => {
            let range = range.as_deref().map(commands::parse_range).transpose()?;
            commands::scan(&load(&file)?, range)
        }
        Command::Maptorus { file } => commands::maptorus(&load(&file)?),
        Command::Fusion { file } => commands::fusion(&load(&file)?),
        Command::Arg { file, at, modulus } => {
            let at = at.as_deref().map(parse_scalar).transpose()?;
            let modulus = match modulus {
                Some(m) => Some(
                    parse_modulus(&m)
                        .ok_or_else(|| CliError::validation(format!("unknown modulus `{m}`")))?,
                ),
                None => None,
            };
            commands::arg(&load(&file)?, at, modulus)
        }
        Command::Fmt { file } => Ok(commands::canonical(&load(&file)?)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let json = cli.json;
    let outcome = std::panic::catch_unwind(|| run(cli.command))
        .unwrap_or_else(|_| Err(CliError::new(ErrorKind::Internal, "internal error")));
    match outcome {
        Ok(report) => {
            if json {
                println!("{}", report.json);
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.exit_code)
        }
        Err(e) => {
            if json {
                println!(
                    "{}",
                    json!({"error": {"kind": e.kind.name(), "line": e.line, "message": e.message, "h_dims": e.h_dims}})
                );
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
