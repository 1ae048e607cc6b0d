//! Batch execution: many independent runs, seed bookkeeping, and summary
//! statistics, with rows ready for CSV/JSON emission.

pub mod config;
pub mod output;

use crate::ant::{run_ants, AntScenarioConfig};
use crate::butterfly::{run_butterflies, ButterflyScenarioConfig};
use crate::correlation::EntanglementMode;
use crate::expectation::{expected_displacement, gain_ratio, GainRatio, QuadratureSpec};
use crate::ValidationError;
use rayon::prelude::*;
use serde::Serialize;

/// Per-run seed for run `run_index` of a batch. A SplitMix64 finalizer over
/// odd-stride offsets: the stride keeps distinct indices at distinct inputs
/// and the finalizer is a bijection, so two runs of one batch can never
/// share a seed.
pub fn derive_seed(base_seed: u64, run_index: u64) -> u64 {
    let mut x = base_seed.wrapping_add((run_index + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    x ^= x >> 30;
    x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^= x >> 31;
    x
}

/// Spread of one batch metric. `std_dev` uses the n−1 denominator and is
/// zero for a single run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BatchStatistics {
    pub n_runs: u64,
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
}

impl BatchStatistics {
    fn from_metrics(metrics: &[f64]) -> Self {
        let n = metrics.len();
        let mean = metrics.iter().sum::<f64>() / n as f64;
        let std_dev = if n > 1 {
            let ss: f64 = metrics.iter().map(|m| (m - mean) * (m - mean)).sum();
            (ss / (n as f64 - 1.0)).sqrt()
        } else {
            0.0
        };
        BatchStatistics {
            n_runs: n as u64,
            mean,
            std_dev,
            min: metrics.iter().copied().fold(f64::INFINITY, f64::min),
            max: metrics.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

/// One ant run of a batch; the metric is forward progress along the goal
/// axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AntRunRow {
    pub scenario: &'static str,
    pub run: u64,
    pub seed: u64,
    pub mode: &'static str,
    pub strength_1: f64,
    pub strength_2: f64,
    pub f_min: f64,
    pub z: f64,
    pub g: f64,
    pub n_attempts: u64,
    pub final_x: f64,
    pub final_y: f64,
    pub metric: f64,
    pub solo_moves: u64,
    pub joint_moves: u64,
    pub futile_pushes: u64,
    pub idle_attempts: u64,
    pub converged: bool,
}

/// One butterfly run of a batch; the metric is the total flight count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ButterflyRunRow {
    pub scenario: &'static str,
    pub run: u64,
    pub seed: u64,
    pub mode: &'static str,
    pub initial_distance: f64,
    pub step_length: f64,
    pub lambda: f64,
    pub threshold_fraction: f64,
    pub n_directions: u64,
    pub meet_distance: f64,
    pub rounds: u64,
    pub final_distance: f64,
    pub total_flights: u64,
    pub metric: f64,
    pub converged: bool,
}

/// Aggregate over runs of one (lambda, mode) sweep cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaSweepRow {
    pub lambda: f64,
    pub mode: &'static str,
    pub n_runs: u64,
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
    pub non_converged: u64,
}

/// Quadrature oracle verdict for one parameter point: expected forward
/// progress per attempt in both modes, and their ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoryComparisonRow {
    pub strength_1: f64,
    pub strength_2: f64,
    pub f_min: f64,
    pub z: f64,
    pub grid_points_per_axis: usize,
    pub entangled_y: f64,
    pub entangled_error: f64,
    pub independent_y: f64,
    pub independent_error: f64,
    pub ratio: Option<f64>,
    pub ratio_error_estimate: Option<f64>,
    pub degenerate_flag: bool,
}

fn validate_n_runs(n_runs: u64) -> Result<(), ValidationError> {
    if n_runs >= 1 {
        Ok(())
    } else {
        Err(ValidationError::new("n_runs", "must be at least 1"))
    }
}

/// Run `n_runs` independent ant scenarios in parallel. The configured seed
/// is ignored; each run gets a seed derived from `base_seed` and its index.
pub fn run_ant_batch(
    config: &AntScenarioConfig,
    n_runs: u64,
    base_seed: u64,
) -> Result<(BatchStatistics, Vec<AntRunRow>), ValidationError> {
    config.validate()?;
    validate_n_runs(n_runs)?;
    let rows: Vec<AntRunRow> = (0..n_runs)
        .into_par_iter()
        .map(|run| {
            let seed = derive_seed(base_seed, run);
            let result = run_ants(&AntScenarioConfig { seed, ..*config })
                .expect("config validated before the batch");
            let s = result.summary;
            AntRunRow {
                scenario: "ants",
                run,
                seed,
                mode: config.mode.label(),
                strength_1: config.strength_1,
                strength_2: config.strength_2,
                f_min: config.f_min,
                z: config.z,
                g: config.g,
                n_attempts: config.n_attempts,
                final_x: s.final_position.x,
                final_y: s.final_position.y,
                metric: s.forward_progress,
                solo_moves: s.solo_moves,
                joint_moves: s.joint_moves,
                futile_pushes: s.futile_pushes,
                idle_attempts: s.idle_attempts,
                converged: true,
            }
        })
        .collect();
    let metrics: Vec<f64> = rows.iter().map(|r| r.metric).collect();
    Ok((BatchStatistics::from_metrics(&metrics), rows))
}

/// Run `n_runs` independent butterfly searches in parallel, with the same
/// seed discipline as [`run_ant_batch`].
pub fn run_butterfly_batch(
    config: &ButterflyScenarioConfig,
    n_runs: u64,
    base_seed: u64,
) -> Result<(BatchStatistics, Vec<ButterflyRunRow>), ValidationError> {
    config.validate()?;
    validate_n_runs(n_runs)?;
    let rows: Vec<ButterflyRunRow> = (0..n_runs)
        .into_par_iter()
        .map(|run| {
            let seed = derive_seed(base_seed, run);
            let result = run_butterflies(&ButterflyScenarioConfig { seed, ..*config })
                .expect("config validated before the batch");
            let s = result.summary;
            ButterflyRunRow {
                scenario: "butterflies",
                run,
                seed,
                mode: config.mode.label(),
                initial_distance: config.initial_distance,
                step_length: config.step_length,
                lambda: config.lambda,
                threshold_fraction: config.threshold_fraction,
                n_directions: config.n_directions as u64,
                meet_distance: config.meet_distance,
                rounds: s.rounds,
                final_distance: s.final_distance,
                total_flights: s.total_flights,
                metric: s.total_flights as f64,
                converged: s.converged,
            }
        })
        .collect();
    let metrics: Vec<f64> = rows.iter().map(|r| r.metric).collect();
    Ok((BatchStatistics::from_metrics(&metrics), rows))
}

/// Batch the butterfly scenario over a lambda grid for each given mode.
/// Every (lambda, mode) cell runs `n_runs` searches; cell seeds are derived
/// from `base_seed` and the cell index so cells never share run seeds.
pub fn lambda_sweep(
    config: &ButterflyScenarioConfig,
    lambdas: &[f64],
    modes: &[EntanglementMode],
    n_runs: u64,
    base_seed: u64,
) -> Result<Vec<LambdaSweepRow>, ValidationError> {
    let mut rows = Vec::with_capacity(lambdas.len() * modes.len());
    let mut cell = 0u64;
    for &lambda in lambdas {
        for &mode in modes {
            let cell_config = ButterflyScenarioConfig {
                lambda,
                mode,
                ..*config
            };
            let cell_seed = derive_seed(base_seed, cell);
            let (stats, run_rows) = run_butterfly_batch(&cell_config, n_runs, cell_seed)?;
            rows.push(LambdaSweepRow {
                lambda,
                mode: mode.label(),
                n_runs: stats.n_runs,
                mean: stats.mean,
                std_dev: stats.std_dev,
                min: stats.min,
                max: stats.max,
                non_converged: run_rows.iter().filter(|r| !r.converged).count() as u64,
            });
            cell += 1;
        }
    }
    Ok(rows)
}

/// Evaluate the quadrature oracle at one ant parameter point.
pub fn theory_comparison(
    strength_1: f64,
    strength_2: f64,
    f_min: f64,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<TheoryComparisonRow, ValidationError> {
    let entangled = expected_displacement(
        EntanglementMode::Triplet,
        strength_1,
        strength_2,
        f_min,
        z,
        1.0,
        spec,
    )?;
    let independent = expected_displacement(
        EntanglementMode::Independent,
        strength_1,
        strength_2,
        f_min,
        z,
        1.0,
        spec,
    )?;
    let (ratio, ratio_error_estimate, degenerate_flag) =
        match gain_ratio(strength_1, strength_2, f_min, z, spec)? {
            GainRatio::Finite {
                ratio,
                error_estimate,
            } => (Some(ratio), Some(error_estimate), false),
            GainRatio::Degenerate => (None, None, true),
        };
    Ok(TheoryComparisonRow {
        strength_1,
        strength_2,
        f_min,
        z,
        grid_points_per_axis: spec.grid_points_per_axis,
        entangled_y: entangled.vector.y,
        entangled_error: entangled.error_estimate.y,
        independent_y: independent.vector.y,
        independent_error: independent.error_estimate.y,
        ratio,
        ratio_error_estimate,
        degenerate_flag,
    })
}
