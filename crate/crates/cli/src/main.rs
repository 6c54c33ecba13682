use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use invtool_cli::{bundled, run_scenario, CliError, Format, RunOptions, Scenario};

#[derive(Parser)]
#[command(name = "invtool", version, about = "Exact checks of invariant-theoretic identities for finite matrix groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file, or a bundled scenario by name.
    Run {
        scenario: String,
        /// Worker threads. Tasks currently run on one thread, so values above 1 have no effect.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Override every truncation degree in the scenario.
        #[arg(long)]
        truncation: Option<usize>,
        /// Write the report into this directory instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Record per-task wall-clock time (reports are then no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// List the bundled scenarios.
    ListScenarios,
}

fn load(spec: &str) -> Result<Scenario, CliError> {
    let path = Path::new(spec);
    if path.exists() {
        let text =
            std::fs::read_to_string(path).map_err(|source| CliError::Io { path: spec.to_string(), source })?;
        return Scenario::parse(&text);
    }
    match bundled::find(spec) {
        Some(b) => Scenario::parse(b.text),
        None => Err(CliError::Io {
            path: spec.to_string(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or bundled scenario"),
        }),
    }
}

fn run(spec: &str, jobs: usize, truncation: Option<usize>, out: Option<PathBuf>, format: Format, timing: bool) -> Result<i32, CliError> {
    if jobs == 0 {
        return Err(CliError::Precondition("--jobs must be at least 1".into()));
    }
    let scenario = load(spec)?;
    let opts = RunOptions { truncation, timing, ..RunOptions::default() };
    let report = run_scenario(&scenario, &opts)?;
    let text = report.emit(format)?;
    match out {
        Some(dir) => {
            std::fs::create_dir_all(&dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
            let path = dir.join(format!("{}.{}", scenario.name, format.extension()));
            std::fs::write(&path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(report.summary.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListScenarios => {
            for b in bundled::SCENARIOS {
                let description = Scenario::parse(b.text).map(|s| s.description).unwrap_or_default();
                println!("{:<24} {description}", b.name);
            }
            ExitCode::SUCCESS
        }
        Command::Run { scenario, jobs, truncation, out, format, timing } => {
            match run(&scenario, jobs, truncation, out, format, timing) {
                Ok(code) => ExitCode::from(code as u8),
                Err(e) => {
                    eprintln!("invtool: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
