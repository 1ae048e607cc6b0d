//! Thin CLI over the library: each subcommand resolves a config, runs one
//! library entry point, and emits rows. Human-readable notes go to stderr
//! so piped output stays machine-readable.

use anyhow::Context;
use clap::{Parser, Subcommand};
use entangled_coop::butterfly::run_butterflies;
use entangled_coop::butterfly::ButterflyScenarioConfig;
use entangled_coop::correlation::EntanglementMode;
use entangled_coop::harness::config::ExperimentConfig;
use entangled_coop::harness::output::{emit, OutputFormat};
use entangled_coop::harness::{
    derive_seed, lambda_sweep, run_ant_batch, run_butterfly_batch, theory_comparison,
    BatchStatistics,
};
use entangled_coop::{ant, expectation, selftest};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "entangled-coop",
    version,
    about = "Compare entangled and independent decision streams in two-agent cooperation games"
)]
struct Cli {
    /// TOML experiment file; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Base seed; per-run seeds are derived from it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of independent runs.
    #[arg(long, global = true)]
    runs: Option<u64>,
    /// Output file; stdout when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format: csv or json.
    #[arg(long, global = true, default_value = "csv")]
    format: OutputFormat,
    /// Decision coupling: singlet, triplet, or independent.
    #[arg(long, global = true)]
    mode: Option<EntanglementMode>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate pebble-pushing runs; one row per run.
    Ants {
        /// Also write the per-attempt records of run 0 to this file.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
    },
    /// Expected displacement and gain ratio from the quadrature oracle.
    AntsTheory,
    /// Simulate mutual-search runs; one row per run.
    Butterflies {
        /// Also write the per-round records of run 0 to this file.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
    },
    /// Gain ratio across a friction-threshold grid.
    SweepFmin,
    /// Mean flight counts across a learning-rate grid, entangled and
    /// independent.
    SweepLambda,
    /// Run the built-in property suite; exits nonzero on any failure.
    Selftest,
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();

    let mut config = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = Some(seed);
    }
    if let Some(runs) = cli.runs {
        config.runs = Some(runs);
    }
    if let Some(mode) = cli.mode {
        config.mode = Some(mode);
    }

    match cli.command {
        Command::Ants { trace } => {
            let scenario = config.ant_scenario();
            let n_runs = config.runs_or(1);
            let base_seed = scenario.seed;
            let (stats, rows) = run_ant_batch(&scenario, n_runs, base_seed)?;
            if let Some(path) = trace {
                let traced = ant::run_ants(&ant::AntScenarioConfig {
                    seed: derive_seed(base_seed, 0),
                    ..scenario
                })?;
                emit(&traced.records, cli.format, Some(&path))
                    .with_context(|| format!("writing trace to {}", path.display()))?;
            }
            emit(&rows, cli.format, cli.out.as_deref())?;
            report_stats("ants", "forward progress", &stats);
        }
        Command::AntsTheory => {
            let scenario = config.ant_scenario();
            let row = theory_comparison(
                scenario.strength_1,
                scenario.strength_2,
                scenario.f_min,
                scenario.z,
                &config.quadrature(),
            )?;
            emit(&[row], cli.format, cli.out.as_deref())?;
            match row.ratio {
                Some(ratio) => eprintln!(
                    "ants-theory: expected progress per attempt {:.6} entangled vs {:.6} independent (ratio {:.4})",
                    row.entangled_y, row.independent_y, ratio
                ),
                None => eprintln!(
                    "ants-theory: both expectations are numerically zero; ratio degenerate (limit 2)"
                ),
            }
        }
        Command::Butterflies { trace } => {
            let scenario = config.butterfly_scenario();
            let n_runs = config.runs_or(1);
            let base_seed = scenario.seed;
            let (stats, rows) = run_butterfly_batch(&scenario, n_runs, base_seed)?;
            if let Some(path) = trace {
                let traced = run_butterflies(&ButterflyScenarioConfig {
                    seed: derive_seed(base_seed, 0),
                    ..scenario
                })?;
                emit(&traced.records, cli.format, Some(&path))
                    .with_context(|| format!("writing trace to {}", path.display()))?;
            }
            emit(&rows, cli.format, cli.out.as_deref())?;
            report_stats("butterflies", "total flights", &stats);
            let stuck = rows.iter().filter(|r| !r.converged).count();
            if stuck > 0 {
                eprintln!(
                    "butterflies: {stuck} of {n_runs} runs hit the round cap without meeting"
                );
            }
        }
        Command::SweepFmin => {
            let scenario = config.ant_scenario();
            let points = expectation::sweep_gain_curve(
                scenario.strength_1,
                scenario.strength_2,
                &config.f_min_values(),
                scenario.z,
                &config.quadrature(),
            )?;
            emit(&points, cli.format, cli.out.as_deref())?;
            eprintln!("sweep-fmin: {} thresholds evaluated", points.len());
        }
        Command::SweepLambda => {
            let scenario = config.butterfly_scenario();
            let rows = lambda_sweep(
                &scenario,
                &config.lambda_values(),
                &[EntanglementMode::Singlet, EntanglementMode::Independent],
                config.runs_or(40),
                scenario.seed,
            )?;
            emit(&rows, cli.format, cli.out.as_deref())?;
            eprintln!("sweep-lambda: {} cells evaluated", rows.len());
        }
        Command::Selftest => {
            let checks = selftest::run_all();
            for c in &checks {
                let status = if c.passed { "ok  " } else { "FAIL" };
                println!("{status} {} — {}", c.name, c.details);
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                eprintln!("selftest: {failed} of {} checks failed", checks.len());
                std::process::exit(1);
            }
            println!("selftest: all {} checks passed", checks.len());
        }
    }
    Ok(())
}

fn report_stats(scenario: &str, metric: &str, stats: &BatchStatistics) {
    eprintln!(
        "{scenario}: {} runs, {metric} mean {:.2} (std {:.2}, min {:.2}, max {:.2})",
        stats.n_runs, stats.mean, stats.std_dev, stats.min, stats.max
    );
}
