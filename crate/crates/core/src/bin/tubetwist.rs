//! Command-line front end for the tube algebra workbench.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tubetwist::cli::{self, Command, JobSpec, OutputFormat};
use tubetwist::spectrum::DEFAULT_SEED;

#[derive(Parser)]
#[command(
    name = "tubetwist",
    about = "Tube algebras of graded fusion categories and their 2-cocycle twists",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: TopCommand,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for the spectral analysis.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Override the float comparison tolerance for `verify`.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// `json` emits the report to stdout with a summary on stderr;
    /// `summary` prints the summary line only.
    #[arg(long, global = true, default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum TopCommand {
    /// Validate a group spec and report its basic structure.
    Group {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Cochain operations.
    Cocycle {
        #[command(subcommand)]
        action: CocycleAction,
    },
    /// Emit ψ, Ψ, φ_a, ξ and ψ′ induced by a 3-cocycle.
    Induce {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Tube algebra construction and verification.
    Tube {
        #[command(subcommand)]
        action: TubeAction,
    },
    /// Verify the twisting theorem (shortcut for `tube verify`).
    Verify {
        #[arg(long)]
        category: Option<PathBuf>,
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long)]
        cocycle: PathBuf,
        /// ψ table (format of `induce`) to use on the bundle route.
        #[arg(long)]
        psi: Option<PathBuf>,
    },
    /// Wedderburn report of the tube algebra of a category.
    Spectrum {
        #[arg(long)]
        category: PathBuf,
    },
    /// Compare the spectra of two categories' tube algebras.
    Compare {
        #[arg(long)]
        category: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
}

#[derive(Subcommand)]
enum CocycleAction {
    /// Check the cocycle identity; reports the first failing tuple.
    Check {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        group: Option<PathBuf>,
    },
    /// Solve δη = target, emitting η as a table spec.
    Solve {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        group: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TubeAction {
    /// Build the tube algebra and emit its tables.
    Build {
        #[arg(long)]
        category: PathBuf,
    },
    /// Build, then twist the Fell bundle by the induced 2-cocycle.
    Twist {
        #[arg(long)]
        category: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Verify the twisting theorem for a category and cocycle.
    Verify {
        #[arg(long)]
        category: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        TopCommand::Group { spec } => Command::Group { spec },
        TopCommand::Cocycle { action } => match action {
            CocycleAction::Check { spec, group } => Command::CocycleCheck { spec, group },
            CocycleAction::Solve { spec, group } => Command::CocycleSolve { spec, group },
        },
        TopCommand::Induce { group, cocycle } => Command::Induce { group, cocycle },
        TopCommand::Tube { action } => match action {
            TubeAction::Build { category } => Command::TubeBuild { category },
            TubeAction::Twist { category, cocycle } => Command::TubeTwist { category, cocycle },
            TubeAction::Verify { category, cocycle } => Command::Verify {
                category: Some(category),
                group: None,
                cocycle,
                psi: None,
            },
        },
        TopCommand::Verify {
            category,
            group,
            cocycle,
            psi,
        } => Command::Verify {
            category,
            group,
            cocycle,
            psi,
        },
        TopCommand::Spectrum { category } => Command::Spectrum { category },
        TopCommand::Compare { category, other } => Command::Compare { category, other },
    };
    let format = match cli.common.format.as_str() {
        "summary" => OutputFormat::Summary,
        _ => OutputFormat::Json,
    };
    let job = JobSpec {
        command,
        output: cli.common.out.clone(),
        seed: cli.common.seed,
        tolerance: cli.common.tolerance,
        format,
    };
    let outcome = cli::run(&job);
    let rendered = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
    match format {
        OutputFormat::Json => {
            match &job.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(cli::EXIT_INPUT_ERROR as u8);
                    }
                }
                None => println!("{rendered}"),
            }
            eprintln!("{}", outcome.summary);
        }
        OutputFormat::Summary => {
            println!("{}", outcome.summary);
        }
    }
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.exit_code as u8)
}
