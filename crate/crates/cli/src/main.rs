use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use equiconv_cli::{run, Experiment, RunConfig, RunSummary};

#[derive(Parser)]
#[command(name = "equiconv", version, about = "Eigenfunction expansion experiments for a perturbed Jacobi operator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a TOML config file.
    Run { config: PathBuf },
    /// Run the built-in oracle checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u32,
    },
}

fn report(summary: &RunSummary) -> ExitCode {
    for c in &summary.checks {
        let tag = if c.passed { "ok  " } else { "FAIL" };
        println!("{tag} {} value={:e} threshold={:e}", c.name, c.value, c.threshold);
    }
    println!(
        "{}: {} checks, {} failed; wrote {}",
        summary.experiment,
        summary.checks.len(),
        summary.failed(),
        summary.files.join(", ")
    );
    if summary.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config } => RunConfig::load(&config).and_then(|c| run(&c)).map(|s| report(&s)),
        Command::Selftest { seed } => {
            let mut config = RunConfig::new(Experiment::Selftest);
            config.seed = seed;
            run(&config).map(|s| report(&s))
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(2))
        }
    }
}
