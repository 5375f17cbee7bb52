use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gbcheck_core::casefile::export_case;
use gbcheck_core::catalog::catalog_case;
use gbcheck_core::report::{self, Outcome, VerifyOptions, EXIT_OK, EXIT_PARSE};

#[derive(Parser)]
#[command(
    name = "gbcheck",
    version,
    about = "Euler characteristics, characteristic cycles and Gaussian degrees of invariant constructible functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate both sides of the Gauss-Bonnet identity for one sheaf of a case file.
    Compute {
        path: PathBuf,
        #[arg(long)]
        sheaf: String,
    },
    /// Run every built-in case through every property check.
    Verify {
        #[arg(long)]
        case: Option<String>,
        /// Negative control: corrupt one link coefficient of `sl2_adjoint`.
        #[arg(long)]
        corrupt: bool,
    },
    /// Weyl orbit of a torus point, e.g. `orbit A 2 GL g1,g1,g2`.
    Orbit {
        series: String,
        rank: usize,
        /// `SL`, `GL`, or `-` for series other than A.
        realization: String,
        point: String,
    },
    /// Normalized volume of the convex hull of lattice points listed one per line.
    Volume { path: PathBuf },
    /// Print a built-in case in the case-file format.
    Export { case: String },
}

fn read(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| Outcome {
        text: format!("error: cannot read {}: {e}\n", path.display()),
        code: EXIT_PARSE,
    })
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Compute { path, sheaf } => match read(&path) {
            Ok(text) => {
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                report::run_compute(&text, &name, &sheaf)
            }
            Err(o) => o,
        },
        Command::Verify { case, corrupt } => report::run_verify(&VerifyOptions { case, corrupt }),
        Command::Orbit {
            series,
            rank,
            realization,
            point,
        } => report::run_orbit(&series, rank, &realization, &point),
        Command::Volume { path } => match read(&path) {
            Ok(text) => report::run_volume(&text),
            Err(o) => o,
        },
        Command::Export { case } => match catalog_case(&case) {
            Ok(c) => Outcome {
                text: export_case(&c),
                code: EXIT_OK,
            },
            Err(e) => Outcome {
                text: format!("error: {e}\n"),
                code: EXIT_PARSE,
            },
        },
    }
}

fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    if outcome.code == EXIT_OK {
        print!("{}", outcome.text);
    } else if outcome.text.starts_with("error:") {
        eprint!("{}", outcome.text);
    } else {
        print!("{}", outcome.text);
    }
    ExitCode::from(outcome.code as u8)
}
