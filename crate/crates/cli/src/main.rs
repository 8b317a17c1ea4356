use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use uq_cli::builtin::DEFAULT_KDE_GRID;
use uq_cli::{configure_threads, CliError, McConfig, ResultTable, StudyConfig, THREADS_ENV};

#[derive(Parser)]
#[command(name = "uq", version, about = "Polynomial-chaos uncertainty studies for unreliable-server queues")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rebuild one of the built-in result tables.
    Reproduce {
        table_id: String,
        /// Add Monte-Carlo columns with this many samples.
        #[arg(long, value_name = "N")]
        mc: Option<usize>,
        #[arg(long, default_value_t = 1, requires = "mc")]
        seed: u64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a study described by a JSON config.
    Run {
        config: PathBuf,
        /// Directory for results.csv, surrogate.json and run-metadata.json.
        #[arg(long, default_value = "uq-run")]
        out: PathBuf,
    },
    /// Kernel density estimates of a built-in study's outputs.
    Density {
        table_id: String,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_KDE_GRID)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(table: &ResultTable, out: Option<PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            let file = std::fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
            table.write_csv(file)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table.write_csv(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    configure_threads(std::env::var(THREADS_ENV).ok().as_deref())?;
    match cli.command {
        Command::Reproduce { table_id, mc, seed, out } => {
            let mc = mc.map(|samples| McConfig { samples, seed });
            emit(&uq_cli::reproduce(&table_id, mc)?, out)
        }
        Command::Run { config, out } => {
            let text = std::fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let cfg = StudyConfig::from_json(&text)?;
            let outcome = uq_cli::execute(&cfg)?;
            outcome.write_to(&out)?;
            eprintln!("wrote {}", out.display());
            Ok(())
        }
        Command::Density {
            table_id,
            samples,
            seed,
            grid,
            out,
        } => emit(&uq_cli::density(&table_id, McConfig { samples, seed }, grid)?, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<CliError>().map_or(1, CliError::exit_code);
            ExitCode::from(code as u8)
        }
    }
}
