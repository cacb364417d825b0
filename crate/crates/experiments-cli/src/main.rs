use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use experiments_cli::config::{Experiment, ExperimentConfig};
use experiments_cli::report::emit;
use experiments_cli::{exit_code, run, CliError};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Command {
    Th11,
    Th12,
    Th13,
    Probe,
    Expsum,
    Sieve,
    Dioph,
    Period,
}

impl From<Command> for Experiment {
    fn from(c: Command) -> Experiment {
        match c {
            Command::Th11 => Experiment::Th11,
            Command::Th12 => Experiment::Th12,
            Command::Th13 => Experiment::Th13,
            Command::Probe => Experiment::EffectiveProbe,
            Command::Expsum => Experiment::ExpsumGrid,
            Command::Sieve => Experiment::SieveGrid,
            Command::Dioph => Experiment::Dioph,
            Command::Period => Experiment::Period,
        }
    }
}

/// Horocycle orbit experiments on the modular surface.
#[derive(Debug, Parser)]
#[command(name = "horolab", version = experiments_cli::report::VERSION)]
struct Args {
    experiment: Command,
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long = "max-n")]
    max_n: Option<u64>,
}

fn execute(args: &Args) -> Result<i32, CliError> {
    if let Some(t) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    }
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if args.max_n.is_some() {
        cfg.max_n = args.max_n;
    }
    let result = run(args.experiment.into(), &cfg);
    let code = exit_code(&result);
    let report = result?;
    for n in &report.notes {
        eprintln!("note: {n}");
    }
    let (csv, json) = emit(&report, &cfg, &args.out)?;
    eprintln!("wrote {} and {}", csv.display(), json.display());
    Ok(code)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let code = execute(&args).unwrap_or_else(|e| {
        eprintln!("horolab: {e}");
        e.exit_code()
    });
    ExitCode::from(code as u8)
}
