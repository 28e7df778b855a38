use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use katolab::plan::{parse_dims, parse_seed, DEFAULT_SEED, SEED_ENV};
use katolab::{exit, run_oracle, run_sweep, run_verify, ConfigError, SweepAxis, TrialPlan};
use katolab_core::generators::SeedPlan;
use katolab_core::registry::{checker, sharpness_search};
use katolab_core::series::SeriesCatalog;

#[derive(Parser)]
#[command(name = "katolab", version, about = "Seeded numerical campaigns for Kato-type trace inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a campaign and report every check.
    Verify {
        #[command(flatten)]
        plan: PlanArgs,
        /// Write the full JSON report here.
        #[arg(long, value_name = "FILE.json")]
        out: Option<PathBuf>,
    },
    /// Ratio statistics per exponent or per dimension, as CSV.
    Sweep {
        #[arg(long, value_parser = ["alpha", "dim"])]
        axis: String,
        #[command(flatten)]
        plan: PlanArgs,
        /// CSV destination; standard output when absent.
        #[arg(long, value_name = "FILE.csv")]
        out: Option<PathBuf>,
    },
    /// Largest lhs/rhs found by random search.
    Sharpness {
        #[arg(long)]
        checker: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, env = SEED_ENV)]
        seed: Option<String>,
    },
    /// List the series catalogue.
    Catalog,
    /// Cross-check independent evaluation routes.
    Oracle {
        #[arg(long, env = SEED_ENV)]
        seed: Option<String>,
        #[arg(long, value_name = "FILE.json")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PlanArgs {
    /// JSON file mirroring the trial plan.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Overrides `KTL_SEED` and the config file.
    #[arg(long, env = SEED_ENV)]
    seed: Option<String>,
    /// Dimensions, e.g. `1..8` or `1,2,5`.
    #[arg(long, value_name = "LIST")]
    dims: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    /// Comma-separated checker ids.
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    checkers: Option<Vec<String>>,
}

impl PlanArgs {
    fn plan(&self) -> Result<TrialPlan, ConfigError> {
        let mut plan = match &self.config {
            Some(path) => TrialPlan::from_file(path)?,
            None => TrialPlan::default(),
        };
        if let Some(seed) = &self.seed {
            plan.seed = parse_seed(seed)?;
        }
        if let Some(dims) = &self.dims {
            plan.dims = parse_dims(dims)?;
        }
        if let Some(trials) = self.trials {
            plan.trials_per_cell = trials;
        }
        if let Some(checkers) = &self.checkers {
            plan.checkers = checkers.clone();
        }
        plan.validate()?;
        Ok(plan)
    }
}

fn seed_or_default(seed: &Option<String>) -> Result<u64, ConfigError> {
    seed.as_deref().map_or(Ok(DEFAULT_SEED), parse_seed)
}

fn write_text(path: &PathBuf, text: &str) -> Result<(), ConfigError> {
    std::fs::write(path, text).map_err(|e| ConfigError::Io(path.display().to_string(), e))
}

fn run(cli: Cli) -> Result<i32, ConfigError> {
    match cli.command {
        Command::Verify { plan, out } => {
            let report = run_verify(&plan.plan()?)?;
            if let Some(path) = &out {
                report.write(path)?;
            }
            print!("{}", report.summary());
            Ok(report.exit_code())
        }
        Command::Sweep { axis, plan, out } => {
            let table = run_sweep(&plan.plan()?, axis.parse::<SweepAxis>()?)?;
            match &out {
                Some(path) => table.write(path)?,
                None => print!("{}", table.to_csv()?),
            }
            Ok(exit::OK)
        }
        Command::Sharpness { checker: id, trials, dim, seed } => {
            checker(&id)?;
            if !(1..=katolab::plan::MAX_DIM).contains(&dim) {
                return Err(ConfigError::Invalid(format!("dimension {dim} outside 1..={}", katolab::plan::MAX_DIM)));
            }
            let seed = SeedPlan::new(seed_or_default(&seed)?, 0);
            let found = sharpness_search(&id, dim, trials, seed, &Default::default())?;
            println!("{}", serde_json::to_string_pretty(&found)?);
            Ok(if found.best_ratio > 1.0 + 1e-9 { exit::VIOLATION } else { exit::OK })
        }
        Command::Catalog => {
            println!("{:<20} {:>5} {:>8} {:>11}", "name", "start", "radius", "closed-form");
            for s in SeriesCatalog::standard().entries() {
                println!("{:<20} {:>5} {:>8} {:>11}", s.name(), s.start_index(), s.radius(), s.has_closed_form());
            }
            Ok(exit::OK)
        }
        Command::Oracle { seed, out } => {
            let report = run_oracle(seed_or_default(&seed)?)?;
            if let Some(path) = &out {
                write_text(path, &(serde_json::to_string_pretty(&report)? + "\n"))?;
            }
            print!("{}", report.summary());
            Ok(if report.passed() { exit::OK } else { exit::TOLERANCE })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::CONFIG } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::CONFIG as u8)
        }
    }
}
