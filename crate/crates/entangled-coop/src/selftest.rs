//! Built-in property suite behind the `selftest` subcommand.
//!
//! Every check uses fixed seeds, so the suite is deterministic; statistical
//! bounds are set wide enough (≥ 4σ) that a correct implementation passes
//! every time while broken sampling or bookkeeping is still caught.

use crate::ant::{direction_density, run_ants, sample_direction, AntScenarioConfig};
use crate::butterfly::{
    advance_round, evaluate_and_update, fly_decisions, run_butterflies, ButterflyScenarioConfig,
    ButterflyState,
};
use crate::correlation::{joint_probabilities, sample_pair, EntanglementMode, MeasurementAxis};
use crate::expectation::{expected_displacement, gain_ratio, QuadratureSpec};
use crate::harness::derive_seed;
use crate::seeded_rng;
use crate::vec2::Vec2;
use std::collections::HashSet;
use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

fn check(name: &'static str, body: impl FnOnce() -> Result<String, String>) -> Check {
    match body() {
        Ok(details) => Check {
            name,
            passed: true,
            details,
        },
        Err(details) => Check {
            name,
            passed: false,
            details,
        },
    }
}

const MODES: [EntanglementMode; 3] = [
    EntanglementMode::Singlet,
    EntanglementMode::Triplet,
    EntanglementMode::Independent,
];

/// Run the full suite; order is stable.
pub fn run_all() -> Vec<Check> {
    vec![
        pair_probability_laws(),
        pair_sampling_frequencies(),
        direction_density_normalization(),
        direction_sampling_histogram(),
        push_marginals_fair(),
        threshold_is_inclusive(),
        path_additivity(),
        quadrature_grid_convergence(),
        quadrature_sideways_null(),
        taper_invariance(),
        weight_update_exactness(),
        back_flight_restoration(),
        max_increase_monotone(),
        aligned_singlet_exclusivity(),
        flight_accounting(),
        run_determinism(),
        seed_derivation_collision_free(),
    ]
}

fn pair_probability_laws() -> Check {
    check("pair probability laws", || {
        let mut worst: f64 = 0.0;
        for mode in MODES {
            for k in -40..=40 {
                let alpha = 0.157 * k as f64;
                let shift = 1.9 * k as f64;
                let p = joint_probabilities(mode, MeasurementAxis(alpha), MeasurementAxis(0.0));
                worst = worst.max((p.sum() - 1.0).abs());
                worst = worst.max((p.first_plus() - 0.5).abs());
                worst = worst.max((p.second_plus() - 0.5).abs());
                if worst > 1e-12 {
                    return Err(format!("law violation {worst:.2e} at alpha={alpha}"));
                }
                let q = joint_probabilities(
                    mode,
                    MeasurementAxis(alpha + shift),
                    MeasurementAxis(shift),
                );
                if (p.p_pp - q.p_pp).abs() > 1e-3 {
                    return Err(format!("shift dependence at alpha={alpha} shift={shift}"));
                }
            }
        }
        for k in -20..=20 {
            let alpha = 0.31 * k as f64;
            let s = joint_probabilities(
                EntanglementMode::Singlet,
                MeasurementAxis(alpha),
                MeasurementAxis(0.0),
            );
            let t = joint_probabilities(
                EntanglementMode::Triplet,
                MeasurementAxis(alpha + PI),
                MeasurementAxis(0.0),
            );
            if (s.p_pp - t.p_pp).abs() > 1e-12 || (s.p_pm - t.p_pm).abs() > 1e-12 {
                return Err(format!("duality violated at alpha={alpha}"));
            }
        }
        Ok(format!("worst law residual {worst:.2e}"))
    })
}

fn pair_sampling_frequencies() -> Check {
    check("pair sampling frequencies", || {
        let n = 100_000u64;
        let mut worst_sigmas: f64 = 0.0;
        for (mi, mode) in MODES.into_iter().enumerate() {
            for (ai, alpha) in [0.0, 0.7, PI / 2.0, 2.2].into_iter().enumerate() {
                let a1 = MeasurementAxis(alpha);
                let a2 = MeasurementAxis(0.0);
                let p = joint_probabilities(mode, a1, a2);
                let expected = [p.p_pp, p.p_mm, p.p_pm, p.p_mp];
                let mut counts = [0u64; 4];
                let mut rng = seeded_rng(1000 + (mi * 10 + ai) as u64);
                for _ in 0..n {
                    let o = sample_pair(mode, a1, a2, &mut rng);
                    let idx = match (o.first.is_plus(), o.second.is_plus()) {
                        (true, true) => 0,
                        (false, false) => 1,
                        (true, false) => 2,
                        (false, true) => 3,
                    };
                    counts[idx] += 1;
                }
                for i in 0..4 {
                    let freq = counts[i] as f64 / n as f64;
                    let sigma = (expected[i] * (1.0 - expected[i]) / n as f64).sqrt();
                    let dev = (freq - expected[i]).abs();
                    if sigma == 0.0 {
                        if dev != 0.0 {
                            return Err(format!(
                                "impossible outcome {i} seen for {mode:?} alpha={alpha}"
                            ));
                        }
                    } else {
                        worst_sigmas = worst_sigmas.max(dev / sigma);
                        if dev > 4.0 * sigma {
                            return Err(format!(
                                "{mode:?} alpha={alpha} outcome {i}: {dev:.2e} > 4 sigma"
                            ));
                        }
                    }
                }
            }
        }
        Ok(format!("worst deviation {worst_sigmas:.2} sigma"))
    })
}

fn direction_density_normalization() -> Check {
    check("direction density normalization", || {
        for z in [0.0, 0.25, 0.5, 2.0 / 3.0, 1.0] {
            let n = 200_000;
            let h = 2.0 * PI / n as f64;
            let total: f64 = (0..n)
                .map(|i| direction_density(-PI + (i as f64 + 0.5) * h, z) * h)
                .sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(format!("z={z}: integral {total}"));
            }
        }
        Ok("integrates to 1 for all tapers".into())
    })
}

fn direction_sampling_histogram() -> Check {
    check("direction sampling histogram", || {
        let n = 100_000u64;
        let bins = 12;
        for z in [0.0, 0.5, 1.0] {
            let mut rng = seeded_rng(2000 + (z * 10.0) as u64);
            let mut hist = vec![0u64; bins];
            for _ in 0..n {
                let beta = sample_direction(z, &mut rng);
                if !(-PI..=PI).contains(&beta) {
                    return Err(format!("direction {beta} out of range"));
                }
                let idx = (((beta + PI) / (2.0 * PI)) * bins as f64) as usize;
                hist[idx.min(bins - 1)] += 1;
            }
            let width = 2.0 * PI / bins as f64;
            for (i, count) in hist.iter().enumerate() {
                let mid = -PI + (i as f64 + 0.5) * width;
                let expected = direction_density(mid, z) * width;
                let sigma = (expected * (1.0 - expected) / n as f64).sqrt();
                let freq = *count as f64 / n as f64;
                // Binning the linear density makes the midpoint value exact,
                // so 5σ plus nothing else is a fair per-bin bound.
                if (freq - expected).abs() > 5.0 * sigma {
                    return Err(format!("z={z} bin {i}: {freq:.4} vs {expected:.4}"));
                }
            }
        }
        Ok("histograms match the density at 5 sigma".into())
    })
}

fn push_marginals_fair() -> Check {
    check("push marginals fair", || {
        let n = 100_000u64;
        for (mi, mode) in [EntanglementMode::Triplet, EntanglementMode::Independent]
            .into_iter()
            .enumerate()
        {
            let config = AntScenarioConfig {
                mode,
                n_attempts: n,
                f_min: 0.0,
                seed: 3000 + mi as u64,
                ..AntScenarioConfig::default()
            };
            let run = run_ants(&config).map_err(|e| e.to_string())?;
            let p1 = run.records.iter().filter(|r| r.pushed1).count() as f64 / n as f64;
            let p2 = run.records.iter().filter(|r| r.pushed2).count() as f64 / n as f64;
            let sigma = (0.25 / n as f64).sqrt();
            for (label, p) in [("ant 1", p1), ("ant 2", p2)] {
                if (p - 0.5).abs() > 4.0 * sigma {
                    return Err(format!("{mode:?} {label}: push rate {p:.4}"));
                }
            }
        }
        Ok("both ants push half the time in every mode".into())
    })
}

fn threshold_is_inclusive() -> Check {
    check("threshold inclusive at equality", || {
        let config = AntScenarioConfig {
            strength_1: 1.0,
            strength_2: 1.0,
            f_min: 1.0,
            n_attempts: 5_000,
            mode: EntanglementMode::Independent,
            seed: 4000,
            ..AntScenarioConfig::default()
        };
        let run = run_ants(&config).map_err(|e| e.to_string())?;
        let mut solos = 0u64;
        for r in &run.records {
            if r.pushed1 ^ r.pushed2 {
                solos += 1;
                if !r.moved() {
                    return Err(format!("solo push at attempt {} did not move", r.attempt));
                }
            }
        }
        Ok(format!("{solos} solo pushes all moved at |force| = f_min"))
    })
}

fn path_additivity() -> Check {
    check("path additivity", || {
        let run = run_ants(&AntScenarioConfig {
            n_attempts: 2_000,
            seed: 5000,
            ..AntScenarioConfig::default()
        })
        .map_err(|e| e.to_string())?;
        if run.path.points[0] != Vec2::ZERO {
            return Err("path does not start at the origin".into());
        }
        let mut acc = Vec2::ZERO;
        for (i, r) in run.records.iter().enumerate() {
            acc += r.displacement();
            if run.path.points[i + 1] != acc {
                return Err(format!("point {} diverges from the running sum", i + 1));
            }
        }
        Ok("every path point equals the running displacement sum".into())
    })
}

fn quadrature_grid_convergence() -> Check {
    check("quadrature grid convergence", || {
        let at = |n| {
            expected_displacement(
                EntanglementMode::Triplet,
                0.9,
                1.1,
                1.5,
                2.0 / 3.0,
                1.0,
                &QuadratureSpec::with_grid(n),
            )
            .map_err(|e| e.to_string())
        };
        let coarse = at(128)?;
        let fine = at(1024)?;
        if fine.error_estimate.y >= coarse.error_estimate.y {
            return Err(format!(
                "error estimate did not shrink: {} -> {}",
                coarse.error_estimate.y, fine.error_estimate.y
            ));
        }
        let drift = (fine.vector.y - coarse.vector.y).abs();
        if drift > 2.0 * coarse.error_estimate.y + 1e-9 {
            return Err(format!("refinement moved the value by {drift:.2e}"));
        }
        Ok(format!(
            "error estimate {:.1e} -> {:.1e} on an 8x refinement",
            coarse.error_estimate.y, fine.error_estimate.y
        ))
    })
}

fn quadrature_sideways_null() -> Check {
    check("quadrature sideways null", || {
        for mode in [EntanglementMode::Triplet, EntanglementMode::Independent] {
            let e = expected_displacement(
                mode,
                0.9,
                1.1,
                1.5,
                2.0 / 3.0,
                1.0,
                &QuadratureSpec::with_grid(512),
            )
            .map_err(|e| e.to_string())?;
            if e.vector.x.abs() > 1e-10 {
                return Err(format!("{mode:?}: sideways drift {:.2e}", e.vector.x));
            }
        }
        Ok("expected displacement points straight at the goal".into())
    })
}

fn taper_invariance() -> Check {
    check("gain ratio ignores the taper", || {
        let r = |z: f64| {
            gain_ratio(0.9, 1.1, 1.2, z, &QuadratureSpec::with_grid(1024))
                .map_err(|e| e.to_string())?
                .finite()
                .ok_or_else(|| format!("degenerate ratio at z={z}"))
        };
        let spread = (r(0.25)? - r(0.9)?).abs();
        if spread > 1e-3 {
            return Err(format!("ratio moved by {spread:.2e} across tapers"));
        }
        Ok(format!("ratio spread {spread:.1e} across tapers"))
    })
}

fn weight_update_exactness() -> Check {
    check("weight update exactness", || {
        for lambda in [0.0, 0.25, 0.5, 1.0] {
            let mut state = ButterflyState::new(Vec2::ZERO, 16);
            for k in 0..30 {
                if !evaluate_and_update(&mut state, 5, 0.0, (k + 1) as f64, lambda, 0.6) {
                    return Err(format!("growing improvement rejected at lambda={lambda}"));
                }
            }
            if state.weights[5] != (1.0 + lambda).powi(30) {
                return Err(format!("weight not an exact power at lambda={lambda}"));
            }
            for _ in 0..45 {
                evaluate_and_update(&mut state, 5, 1.0, 0.0, lambda, 0.6);
            }
            if state.weights[5] != (1.0 + lambda).powi(-15) {
                return Err(format!("decrement drift at lambda={lambda}"));
            }
        }
        Ok("weights stay exact powers of 1 + lambda".into())
    })
}

fn back_flight_restoration() -> Check {
    check("back-flight restoration", || {
        let config = ButterflyScenarioConfig {
            initial_distance: 400.0,
            seed: 6000,
            ..ButterflyScenarioConfig::default()
        };
        let mut states = [
            ButterflyState::new(Vec2::ZERO, config.n_directions),
            ButterflyState::new(Vec2::new(config.initial_distance, 0.0), config.n_directions),
        ];
        let mut rng = seeded_rng(config.seed);
        let mut reverted = 0u64;
        for round in 0..3_000 {
            let snapshot = [states[0].position, states[1].position];
            let record = advance_round(&config, &mut states, round, &mut rng);
            for (j, (flew, accepted)) in [
                (record.flew_1, record.accepted_1),
                (record.flew_2, record.accepted_2),
            ]
            .into_iter()
            .enumerate()
            {
                if flew && !accepted {
                    reverted += 1;
                    if states[j].position != snapshot[j] {
                        return Err(format!("round {round}: reverted position drifted"));
                    }
                }
            }
        }
        if reverted < 100 {
            return Err(format!("only {reverted} back-flights exercised"));
        }
        Ok(format!("{reverted} back-flights restored bit-exactly"))
    })
}

fn max_increase_monotone() -> Check {
    check("max increase monotone", || {
        let config = ButterflyScenarioConfig {
            initial_distance: 200.0,
            seed: 7000,
            ..ButterflyScenarioConfig::default()
        };
        let mut states = [
            ButterflyState::new(Vec2::ZERO, config.n_directions),
            ButterflyState::new(Vec2::new(config.initial_distance, 0.0), config.n_directions),
        ];
        let mut rng = seeded_rng(config.seed);
        let mut prev = [0.0f64; 2];
        for round in 0..2_000 {
            advance_round(&config, &mut states, round, &mut rng);
            for j in 0..2 {
                if states[j].max_increase < prev[j] {
                    return Err(format!("round {round}: best improvement decreased"));
                }
                prev[j] = states[j].max_increase;
            }
        }
        Ok("best accepted improvement never decreases".into())
    })
}

fn aligned_singlet_exclusivity() -> Check {
    check("aligned singlet exclusivity", || {
        let mut rng = seeded_rng(8000);
        for _ in 0..5_000 {
            let (a, b) = fly_decisions(EntanglementMode::Singlet, 7, 7, 16, &mut rng);
            if a == b {
                return Err("both (or neither) flew on aligned singlet axes".into());
            }
        }
        Ok("equal axes always split the pair".into())
    })
}

fn flight_accounting() -> Check {
    check("flight accounting", || {
        let run = run_butterflies(&ButterflyScenarioConfig {
            initial_distance: 120.0,
            seed: 9000,
            ..ButterflyScenarioConfig::default()
        })
        .map_err(|e| e.to_string())?;
        let mut total = 0u64;
        for r in &run.records {
            let backs = (r.flew_1 && !r.accepted_1) as u8 + (r.flew_2 && !r.accepted_2) as u8;
            if r.flights_this_round != r.flew_1 as u8 + r.flew_2 as u8 + backs {
                return Err(format!("round {}: flight count inconsistent", r.round));
            }
            total += r.flights_this_round as u64;
        }
        if total != run.summary.total_flights {
            return Err("summary total differs from per-round sum".into());
        }
        if run.summary.converged && run.summary.final_distance > 5.0 {
            return Err("converged run ended beyond the meeting distance".into());
        }
        Ok(format!(
            "{} flights over {} rounds, all invariants hold",
            total, run.summary.rounds
        ))
    })
}

fn run_determinism() -> Check {
    check("run determinism", || {
        let ants = AntScenarioConfig {
            n_attempts: 300,
            seed: 10_000,
            ..AntScenarioConfig::default()
        };
        let a = run_ants(&ants).map_err(|e| e.to_string())?;
        let b = run_ants(&ants).map_err(|e| e.to_string())?;
        if a != b {
            return Err("identical ant seeds diverged".into());
        }
        let butterflies = ButterflyScenarioConfig {
            initial_distance: 90.0,
            seed: 10_001,
            ..ButterflyScenarioConfig::default()
        };
        let c = run_butterflies(&butterflies).map_err(|e| e.to_string())?;
        let d = run_butterflies(&butterflies).map_err(|e| e.to_string())?;
        if c != d {
            return Err("identical butterfly seeds diverged".into());
        }
        Ok("identical seeds reproduce identical runs".into())
    })
}

fn seed_derivation_collision_free() -> Check {
    check("seed derivation collision-free", || {
        let mut seen = HashSet::with_capacity(100_000);
        for run in 0..100_000u64 {
            if !seen.insert(derive_seed(42, run)) {
                return Err(format!("collision at run index {run}"));
            }
        }
        Ok("100000 derived seeds, no collisions".into())
    })
}
