use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tsgeom_core::fixtures;
use tsgeom_core::manifest::{Manifest, Suite};
use tsgeom_core::runner::{run, RunOptions, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "tsgeom", version, about = "Exact frame-field checks for 3-dimensional almost contact manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run check suites on a manifest and report the results.
    Check {
        manifest: PathBuf,
        /// Suite to run (repeatable); `all` runs every suite.
        #[arg(long = "suite", value_name = "NAME", value_parser = Suite::parse_selection)]
        suites: Vec<Vec<Suite>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also cross-check the connection and curvature by finite differences (chart mode only).
        #[arg(long)]
        oracle: bool,
        /// Seed for the sample points of the finite-difference check.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Print a bundled manifest (example, s3, flat).
    Fixture { name: String },
}

fn check(path: PathBuf, suites: Vec<Vec<Suite>>, format: Format, oracle: bool, seed: u64) -> Result<u8, String> {
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let manifest = Manifest::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let opts = RunOptions {
        suites: suites.into_iter().flatten().collect(),
        oracle,
        seed,
    };
    let label = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    let report = run(&manifest, &label, &opts).map_err(|e| format!("{}: {e}", path.display()))?;
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    Ok(report.exit_code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Check {
            manifest,
            suites,
            format,
            oracle,
            seed,
        } => check(manifest, suites, format, oracle, seed),
        Command::Fixture { name } => match fixtures::by_name(&name) {
            Some(text) => {
                print!("{text}");
                Ok(0)
            }
            None => Err(format!("unknown fixture `{name}` (expected example, s3, flat)")),
        },
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
