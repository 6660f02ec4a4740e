//! Command-line harness: run experiments, verification suites, and sweeps.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dynregret::harness::{config, runner, sweep, verify};
use dynregret::Error;

#[derive(Parser)]
#[command(
    name = "dynregret",
    about = "Online learners under drifting minimizers: experiments, regret \
             bounds, and property verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write rounds.csv and summary.txt.
    Run {
        /// Experiment config file (section-based key = value text).
        #[arg(long)]
        config: PathBuf,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a named property suite and report pass/fail per check.
    Verify {
        /// One of: contraction, semi_contraction, newton, decrement_bound,
        /// gradients, bounds, lower_bound, all.
        #[arg(long)]
        suite: String,
        /// Seed count for the statistical lower-bound suite.
        #[arg(long)]
        seeds: Option<usize>,
    },
    /// Run the base config once per value of one parameter and write a
    /// combined table.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Varied parameter, e.g. `scenario.tau=0.3,0.5,0.8`.
        #[arg(long)]
        vary: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn seed_override() -> Result<Option<u64>, Error> {
    match std::env::var("DYNREGRET_SEED") {
        Ok(v) => v
            .parse::<u64>()
            .map(Some)
            .map_err(|_| Error::Config(format!("DYNREGRET_SEED is not a u64: `{v}`"))),
        Err(_) => Ok(None),
    }
}

fn exit_code_for(err: &Error) -> ExitCode {
    match err {
        Error::Config(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn cmd_run(config_path: &Path, out: &Path) -> Result<(), Error> {
    let cfg = config::load(config_path, seed_override()?)?;
    let (records, summary) = runner::run_to_dir(&cfg, out)?;
    println!(
        "ran {} rounds: regret {}, outputs in {}",
        records.len(),
        summary.regret,
        out.display()
    );
    if let Some(bounds) = &summary.bounds {
        println!(
            "bounds [{}]: all satisfied = {}",
            bounds.pairing,
            bounds.all_satisfied()
        );
    }
    Ok(())
}

fn cmd_verify(suite: &str, seeds: Option<usize>) -> Result<bool, Error> {
    let names: Vec<&str> = if suite == "all" {
        verify::SUITE_NAMES.to_vec()
    } else {
        vec![suite]
    };
    let mut all_passed = true;
    for name in names {
        let result = verify::run_suite(name, seeds)?;
        for check in &result.checks {
            let tag = if check.passed { "PASS" } else { "FAIL" };
            if check.detail.is_empty() {
                println!("{tag} [{}] {}", result.suite, check.label);
            } else {
                println!("{tag} [{}] {} ({})", result.suite, check.label, check.detail);
            }
        }
        println!(
            "suite {}: {} in {:.2}s",
            result.suite,
            if result.passed() { "pass" } else { "FAIL" },
            result.elapsed_secs
        );
        all_passed &= result.passed();
    }
    Ok(all_passed)
}

fn cmd_sweep(config_path: &Path, vary: &str, out: &Path) -> Result<(), Error> {
    let (key, list) = vary.split_once('=').ok_or_else(|| {
        Error::Config(format!("--vary expects `section.key=v1,v2,...`, got `{vary}`"))
    })?;
    let values: Vec<String> = if list.trim().is_empty() {
        Vec::new()
    } else {
        list.split(',').map(|s| s.trim().to_string()).collect()
    };
    let mut text = std::fs::read_to_string(config_path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", config_path.display())))?;
    if let Some(seed) = seed_override()? {
        text = config::override_key(&text, "scenario", "seed", &seed.to_string());
    }
    let cells = sweep::sweep(&text, key, &values)?;
    std::fs::create_dir_all(out)?;
    let table = sweep::table_to_csv(key, &cells);
    std::fs::write(out.join("sweep.csv"), &table)?;
    let failures = cells.iter().filter(|c| c.outcome.is_err()).count();
    println!(
        "swept {} values of {key} ({failures} cell errors); table in {}",
        cells.len(),
        out.join("sweep.csv").display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Run { config, out } => match cmd_run(config, out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                exit_code_for(&e)
            }
        },
        Command::Verify { suite, seeds } => match cmd_verify(suite, *seeds) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                exit_code_for(&e)
            }
        },
        Command::Sweep { config, vary, out } => match cmd_sweep(config, vary, out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                exit_code_for(&e)
            }
        },
    }
}
