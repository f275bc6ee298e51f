mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mvmob_core::analysis::AnalysisKind;
use mvmob_core::Stakeholder;

#[derive(Debug, Parser)]
#[command(
    name = "mvmob",
    version,
    about = "Four-viewpoint mobile app modelling toolchain"
)]
struct Cli {
    /// Project directory holding `mvmob.json`.
    #[arg(long, global = true, default_value = ".")]
    project: PathBuf,

    /// Directory for generated reports, slices, traces and code.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Treat warnings as findings (exit 1).
    #[arg(long, global = true)]
    fail_on_warning: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Bundle,
    Prototype,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate every model.
    Check,
    /// Run static analyses and write one JSON report per analysis.
    Analyze {
        /// Comma-separated subset; all analyses by default.
        #[arg(long, value_delimiter = ',', value_parser = parse_analysis)]
        analysis: Vec<AnalysisKind>,
    },
    /// Write the slice of the project visible to a stakeholder.
    Project {
        /// Role such as `uiDesigner`, `backEndDeveloper` or `user`.
        #[arg(value_parser = parse_stakeholder)]
        stakeholder: Stakeholder,
    },
    /// Run a scenario and write its trace as JSON lines.
    Simulate {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Emit the app bundle and/or the static prototype.
    Generate {
        #[arg(long, value_enum, value_delimiter = ',')]
        target: Vec<Target>,
    },
    /// Rewrite model files in canonical form.
    Format {
        /// Report files that would change without writing them.
        #[arg(long)]
        check: bool,
    },
}

fn parse_analysis(s: &str) -> Result<AnalysisKind, String> {
    s.parse()
        .map_err(|e: mvmob_core::analysis::UnknownAnalysis| e.to_string())
}

fn parse_stakeholder(s: &str) -> Result<Stakeholder, String> {
    s.parse()
        .map_err(|e: mvmob_core::projection::UnknownStakeholder| {
            let names: Vec<&str> = Stakeholder::ALL.iter().map(|s| s.as_str()).collect();
            format!("{e}; expected one of {}", names.join(", "))
        })
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Findings = 1,
    ParseError = 2,
    Environment = 3,
}

pub struct Config {
    pub project: PathBuf,
    pub out: PathBuf,
    pub format: Format,
    pub fail_on_warning: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = Config {
        project: cli.project,
        out: cli.out,
        format: cli.format,
        fail_on_warning: cli.fail_on_warning,
    };
    let result = match cli.command {
        Command::Check => commands::check(&config),
        Command::Analyze { analysis } => commands::analyze(&config, &analysis),
        Command::Project { stakeholder } => commands::project(&config, stakeholder),
        Command::Simulate { scenario } => commands::simulate(&config, &scenario),
        Command::Generate { target } => commands::generate(&config, &target),
        Command::Format { check } => commands::format(&config, check),
    };
    let exit = match result {
        Ok(exit) => exit,
        Err(e) => {
            eprintln!("mvmob: {e}");
            e.exit()
        }
    };
    ExitCode::from(exit as u8)
}
