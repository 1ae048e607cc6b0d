//! Two butterflies searching for each other by scent.
//!
//! Each round both butterflies pick a compass direction from their learned
//! weight tables, then one shared pair decision (measured along those
//! directions) tells each of them whether to fly. A flier keeps the move
//! only if the scent sampled after landing improved enough on the reading
//! both took at launch; otherwise it flies straight back. Every flight,
//! kept or reverted, costs one step of travel, and the pair is done when
//! they come within `meet_distance` of each other.

use crate::correlation::{sample_pair, EntanglementMode, MeasurementAxis};
use crate::vec2::Vec2;
use crate::ValidationError;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ButterflyScenarioConfig {
    /// Starting separation along the x axis.
    pub initial_distance: f64,
    /// Distance covered by one flight.
    pub step_length: f64,
    /// Learning rate: an accepted direction's weight is multiplied by
    /// 1 + lambda, a rejected one divided by it.
    pub lambda: f64,
    /// A kept flight must improve the scent by at least this fraction of
    /// the best improvement seen so far.
    pub threshold_fraction: f64,
    /// Number of evenly spaced compass directions.
    pub n_directions: usize,
    /// Separation at which the butterflies have found each other.
    pub meet_distance: f64,
    pub mode: EntanglementMode,
    pub seed: u64,
    /// Round cap; hitting it marks the run as non-converged.
    pub max_rounds: u64,
}

impl Default for ButterflyScenarioConfig {
    fn default() -> Self {
        ButterflyScenarioConfig {
            initial_distance: 1600.0,
            step_length: 5.0,
            lambda: 0.5,
            threshold_fraction: 0.6,
            n_directions: 16,
            meet_distance: 5.0,
            mode: EntanglementMode::Singlet,
            seed: 42,
            max_rounds: 200_000,
        }
    }
}

impl ButterflyScenarioConfig {
    pub fn validate(&self) -> Result<(), ValidationError> {
        let check = |ok: bool, field: &'static str, message: &str| {
            if ok {
                Ok(())
            } else {
                Err(ValidationError::new(field, message))
            }
        };
        check(
            self.initial_distance > 0.0 && self.initial_distance.is_finite(),
            "initial_distance",
            "must be a positive finite number",
        )?;
        check(
            self.step_length > 0.0 && self.step_length.is_finite(),
            "step_length",
            "must be a positive finite number",
        )?;
        check(
            (0.0..=1.0).contains(&self.lambda),
            "lambda",
            "must lie in [0, 1]",
        )?;
        check(
            self.threshold_fraction > 0.0 && self.threshold_fraction <= 1.0,
            "threshold_fraction",
            "must lie in (0, 1]",
        )?;
        check(
            self.n_directions >= 2 && self.n_directions.is_multiple_of(2),
            "n_directions",
            "must be an even number of at least 2",
        )?;
        check(
            self.meet_distance > 0.0 && self.meet_distance.is_finite(),
            "meet_distance",
            "must be a positive finite number",
        )?;
        check(self.max_rounds >= 1, "max_rounds", "must be at least 1")?;
        Ok(())
    }
}

/// Scent strength at the given separation: inverse-square, clamped below
/// one tenth of the meeting distance so the pole stays finite.
pub fn scent_intensity(distance: f64, meet_distance: f64) -> f64 {
    let r = distance.max(meet_distance / 10.0);
    1.0 / (r * r)
}

/// Direction `index` of `n_directions` as an angle in radians.
pub fn direction_angle(index: usize, n_directions: usize) -> f64 {
    2.0 * PI * index as f64 / n_directions as f64
}

/// Learned state of one butterfly. Direction weights are kept as integer
/// exponents and rematerialized as (1 + lambda)^k after every update, so a
/// weight is always exactly the power its accept/reject history implies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ButterflyState {
    pub position: Vec2,
    pub weight_exponents: Vec<i32>,
    pub weights: Vec<f64>,
    /// Largest accepted scent improvement so far; starts at zero so the
    /// first positive improvement is always kept.
    pub max_increase: f64,
}

impl ButterflyState {
    pub fn new(position: Vec2, n_directions: usize) -> Self {
        ButterflyState {
            position,
            weight_exponents: vec![0; n_directions],
            weights: vec![1.0; n_directions],
            max_increase: 0.0,
        }
    }
}

/// Exponent magnitude at which (1 + lambda)^k would leave the normal f64
/// range; updates clamp there so weights stay positive and finite.
fn max_exponent(lambda: f64) -> i32 {
    if lambda == 0.0 {
        i32::MAX
    } else {
        let cap = 700.0 / lambda.ln_1p();
        if cap >= i32::MAX as f64 {
            i32::MAX
        } else {
            cap as i32
        }
    }
}

/// Pick a direction index with probability proportional to its weight,
/// consuming exactly one uniform variate.
pub fn choose_direction<R: Rng + ?Sized>(state: &ButterflyState, rng: &mut R) -> usize {
    let total: f64 = state.weights.iter().sum();
    let target: f64 = rng.random::<f64>() * total;
    let mut acc = 0.0;
    for (i, w) in state.weights.iter().enumerate() {
        acc += w;
        if target < acc {
            return i;
        }
    }
    state.weights.len() - 1
}

/// Shared fly/rest decision for the round, measured along both chosen
/// directions. Returns (butterfly 1 flies, butterfly 2 flies).
pub fn fly_decisions<R: Rng + ?Sized>(
    mode: EntanglementMode,
    direction_1: usize,
    direction_2: usize,
    n_directions: usize,
    rng: &mut R,
) -> (bool, bool) {
    let outcome = sample_pair(
        mode,
        MeasurementAxis(direction_angle(direction_1, n_directions)),
        MeasurementAxis(direction_angle(direction_2, n_directions)),
        rng,
    );
    (outcome.first.is_plus(), outcome.second.is_plus())
}

/// Score a completed flight and update the learned state: a kept flight
/// raises the direction's weight exponent and may raise `max_increase`, a
/// rejected one lowers the exponent. Returns whether the flight was kept.
/// Restoring the position after a rejection is the caller's job.
pub fn evaluate_and_update(
    state: &mut ButterflyState,
    direction_index: usize,
    intensity_before: f64,
    intensity_after: f64,
    lambda: f64,
    threshold_fraction: f64,
) -> bool {
    let increase = intensity_after - intensity_before;
    let accepted = increase > 0.0 && increase >= threshold_fraction * state.max_increase;
    let cap = max_exponent(lambda);
    let k = &mut state.weight_exponents[direction_index];
    *k = k
        .saturating_add(if accepted { 1 } else { -1 })
        .clamp(-cap, cap);
    state.weights[direction_index] = (1.0 + lambda).powi(*k);
    if accepted && increase > state.max_increase {
        state.max_increase = increase;
    }
    accepted
}

/// One round of a run. `FlightRecord` captures everything visible to an
/// observer; per-butterfly fields use suffixes 1 and 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlightRecord {
    pub round: u64,
    pub direction_1: usize,
    pub flew_1: bool,
    /// Whether the flight was kept; meaningful only when `flew_1`. A flown
    /// but unaccepted move means a back-flight.
    pub accepted_1: bool,
    pub intensity_before_1: f64,
    pub intensity_after_1: f64,
    pub direction_2: usize,
    pub flew_2: bool,
    pub accepted_2: bool,
    pub intensity_before_2: f64,
    pub intensity_after_2: f64,
    /// Flights flown this round including back-flights: 0 to 4.
    pub flights_this_round: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ButterflySummary {
    /// Total flights over the run, counting each back-flight as a second
    /// flight (total distance flown is this times the step length).
    pub total_flights: u64,
    pub rounds: u64,
    pub final_distance: f64,
    /// False when the round cap was hit before the butterflies met.
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ButterflyRun {
    pub records: Vec<FlightRecord>,
    pub summary: ButterflySummary,
    pub final_states: [ButterflyState; 2],
}

/// Advance both butterflies by one round: choose directions, make the
/// shared fly/rest decision, move the fliers, then score them in order
/// (butterfly 1 first). Both fliers compare against the scent at launch;
/// a rejected flier is moved back before its partner is scored. Consumes
/// exactly three uniform variates.
pub(crate) fn advance_round<R: Rng + ?Sized>(
    config: &ButterflyScenarioConfig,
    states: &mut [ButterflyState; 2],
    round: u64,
    rng: &mut R,
) -> FlightRecord {
    let directions = [
        choose_direction(&states[0], rng),
        choose_direction(&states[1], rng),
    ];
    let (fly_1, fly_2) = fly_decisions(
        config.mode,
        directions[0],
        directions[1],
        config.n_directions,
        rng,
    );
    let flew = [fly_1, fly_2];

    let launch_distance = states[0].position.distance(states[1].position);
    let before = scent_intensity(launch_distance, config.meet_distance);
    let launch_positions = [states[0].position, states[1].position];

    for j in 0..2 {
        if flew[j] {
            let angle = direction_angle(directions[j], config.n_directions);
            states[j].position += Vec2::new(angle.cos(), angle.sin()) * config.step_length;
        }
    }

    let mut accepted = [false; 2];
    let mut after = [before; 2];
    for j in 0..2 {
        if flew[j] {
            let separation = states[j].position.distance(states[1 - j].position);
            after[j] = scent_intensity(separation, config.meet_distance);
            accepted[j] = evaluate_and_update(
                &mut states[j],
                directions[j],
                before,
                after[j],
                config.lambda,
                config.threshold_fraction,
            );
            if !accepted[j] {
                states[j].position = launch_positions[j];
            }
        }
    }

    let back_flights = (flew[0] && !accepted[0]) as u8 + (flew[1] && !accepted[1]) as u8;
    FlightRecord {
        round,
        direction_1: directions[0],
        flew_1: flew[0],
        accepted_1: accepted[0],
        intensity_before_1: before,
        intensity_after_1: after[0],
        direction_2: directions[1],
        flew_2: flew[1],
        accepted_2: accepted[1],
        intensity_before_2: before,
        intensity_after_2: after[1],
        flights_this_round: flew[0] as u8 + flew[1] as u8 + back_flights,
    }
}

/// Run a full search from the configured seed.
pub fn run_butterflies(config: &ButterflyScenarioConfig) -> Result<ButterflyRun, ValidationError> {
    config.validate()?;
    let mut rng = crate::seeded_rng(config.seed);
    let mut states = [
        ButterflyState::new(Vec2::ZERO, config.n_directions),
        ButterflyState::new(Vec2::new(config.initial_distance, 0.0), config.n_directions),
    ];

    let mut records = Vec::new();
    let mut total_flights = 0u64;
    let mut rounds = 0u64;
    let mut converged = false;
    loop {
        let distance = states[0].position.distance(states[1].position);
        if distance <= config.meet_distance {
            converged = true;
            break;
        }
        if rounds == config.max_rounds {
            break;
        }
        let record = advance_round(config, &mut states, rounds, &mut rng);
        total_flights += record.flights_this_round as u64;
        records.push(record);
        rounds += 1;
    }

    let summary = ButterflySummary {
        total_flights,
        rounds,
        final_distance: states[0].position.distance(states[1].position),
        converged,
    };
    Ok(ButterflyRun {
        records,
        summary,
        final_states: states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn small_config() -> ButterflyScenarioConfig {
        ButterflyScenarioConfig {
            initial_distance: 80.0,
            ..ButterflyScenarioConfig::default()
        }
    }

    #[test]
    fn scent_is_decreasing_and_clamped() {
        assert!(scent_intensity(10.0, 5.0) > scent_intensity(20.0, 5.0));
        // Below the clamp the field saturates instead of blowing up.
        let saturated = scent_intensity(0.0, 5.0);
        assert!(saturated.is_finite());
        assert_eq!(saturated, scent_intensity(0.3, 5.0));
        assert_eq!(saturated, 1.0 / (0.5 * 0.5));
    }

    #[test]
    fn weights_are_exact_powers_of_the_learning_factor() {
        let lambda = 0.5;
        let mut state = ButterflyState::new(Vec2::ZERO, 16);
        // Ever-growing improvements keep every flight above threshold.
        for k in 0..12 {
            let kept = evaluate_and_update(&mut state, 3, 0.0, (k + 1) as f64, lambda, 0.6);
            assert!(kept);
        }
        assert_eq!(state.weight_exponents[3], 12);
        assert_eq!(state.weights[3], 1.5f64.powi(12));
        for _ in 0..20 {
            let kept = evaluate_and_update(&mut state, 3, 1.0, 0.5, lambda, 0.6);
            assert!(!kept);
        }
        assert_eq!(state.weight_exponents[3], -8);
        assert_eq!(state.weights[3], 1.5f64.powi(-8));
    }

    #[test]
    fn weights_survive_long_rejection_streaks() {
        let lambda = 1.0;
        let mut state = ButterflyState::new(Vec2::ZERO, 4);
        for _ in 0..5_000 {
            evaluate_and_update(&mut state, 0, 1.0, 0.0, lambda, 0.6);
        }
        assert!(state.weights[0] > 0.0 && state.weights[0].is_finite());
        for _ in 0..10_000 {
            evaluate_and_update(&mut state, 0, 0.0, f64::MAX, lambda, 0.6);
        }
        assert!(state.weights[0] > 0.0 && state.weights[0].is_finite());
    }

    #[test]
    fn first_positive_improvement_is_always_kept() {
        let mut state = ButterflyState::new(Vec2::ZERO, 16);
        assert_eq!(state.max_increase, 0.0);
        assert!(evaluate_and_update(
            &mut state,
            0,
            1.0,
            1.0 + 1e-12,
            0.5,
            0.6
        ));
    }

    #[test]
    fn max_increase_never_decreases() {
        let config = small_config();
        let mut states = [
            ButterflyState::new(Vec2::ZERO, config.n_directions),
            ButterflyState::new(Vec2::new(config.initial_distance, 0.0), config.n_directions),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut prev = [0.0f64; 2];
        for round in 0..500 {
            advance_round(&config, &mut states, round, &mut rng);
            for j in 0..2 {
                assert!(states[j].max_increase >= prev[j]);
                prev[j] = states[j].max_increase;
            }
        }
    }

    #[test]
    fn rejected_flights_restore_positions_bit_exactly() {
        // Far enough apart that plenty of flights are kept before the pair
        // meets and the scent clamp starts rejecting everything.
        let config = ButterflyScenarioConfig {
            initial_distance: 400.0,
            ..ButterflyScenarioConfig::default()
        };
        let mut states = [
            ButterflyState::new(Vec2::ZERO, config.n_directions),
            ButterflyState::new(Vec2::new(config.initial_distance, 0.0), config.n_directions),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let (mut kept, mut reverted) = (0, 0);
        for round in 0..3_000 {
            let snapshot = [states[0].position, states[1].position];
            let record = advance_round(&config, &mut states, round, &mut rng);
            let flew = [record.flew_1, record.flew_2];
            let accepted = [record.accepted_1, record.accepted_2];
            for j in 0..2 {
                if !flew[j] || !accepted[j] {
                    assert_eq!(states[j].position, snapshot[j]);
                    if flew[j] {
                        reverted += 1;
                    }
                } else {
                    assert_ne!(states[j].position, snapshot[j]);
                    kept += 1;
                }
            }
        }
        assert!(
            kept > 60 && reverted > 100,
            "kept {kept} reverted {reverted}"
        );
    }

    #[test]
    fn uniform_choice_at_zero_learning_rate() {
        let state = ButterflyState::new(Vec2::ZERO, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 80_000;
        let mut counts = [0u64; 8];
        for _ in 0..n {
            counts[choose_direction(&state, &mut rng)] += 1;
        }
        for c in counts {
            let freq = c as f64 / n as f64;
            assert!((freq - 0.125).abs() <= 0.006, "{freq}");
        }
    }

    #[test]
    fn weighted_choice_follows_the_weights() {
        let mut state = ButterflyState::new(Vec2::ZERO, 4);
        state.weight_exponents = vec![2, 0, 0, 0];
        state.weights = vec![4.0, 1.0, 1.0, 1.0];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 70_000;
        let mut hits = 0u64;
        for _ in 0..n {
            if choose_direction(&state, &mut rng) == 0 {
                hits += 1;
            }
        }
        let freq = hits as f64 / n as f64;
        assert!((freq - 4.0 / 7.0).abs() <= 0.01, "{freq}");
    }

    #[test]
    fn aligned_singlet_directions_send_exactly_one_flier() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..2_000 {
            let (a, b) = fly_decisions(EntanglementMode::Singlet, 4, 4, 16, &mut rng);
            assert!(a ^ b);
        }
    }

    #[test]
    fn fly_marginals_are_fair() {
        for mode in [EntanglementMode::Singlet, EntanglementMode::Independent] {
            let mut rng = ChaCha8Rng::seed_from_u64(21);
            let n = 100_000;
            let (mut f1, mut f2) = (0u64, 0u64);
            for i in 0..n {
                let (a, b) = fly_decisions(
                    mode,
                    (i % 16) as usize,
                    ((i / 16) % 16) as usize,
                    16,
                    &mut rng,
                );
                f1 += a as u64;
                f2 += b as u64;
            }
            for f in [f1, f2] {
                let freq = f as f64 / n as f64;
                assert!((freq - 0.5).abs() <= 0.01, "{mode:?}: {freq}");
            }
        }
    }

    #[test]
    fn short_search_converges_and_counts_flights() {
        let config = small_config();
        let run = run_butterflies(&config).unwrap();
        assert!(run.summary.converged);
        assert!(run.summary.final_distance <= config.meet_distance);
        assert_eq!(run.summary.rounds, run.records.len() as u64);
        let total: u64 = run
            .records
            .iter()
            .map(|r| r.flights_this_round as u64)
            .sum();
        assert_eq!(total, run.summary.total_flights);
        for r in &run.records {
            let backs = (r.flew_1 && !r.accepted_1) as u8 + (r.flew_2 && !r.accepted_2) as u8;
            assert_eq!(
                r.flights_this_round,
                r.flew_1 as u8 + r.flew_2 as u8 + backs
            );
        }
    }

    #[test]
    fn hitting_the_round_cap_reports_non_convergence() {
        let config = ButterflyScenarioConfig {
            max_rounds: 10,
            ..ButterflyScenarioConfig::default()
        };
        let run = run_butterflies(&config).unwrap();
        assert!(!run.summary.converged);
        assert_eq!(run.summary.rounds, 10);
        assert!(run.summary.final_distance > config.meet_distance);
    }

    #[test]
    fn runs_are_deterministic_per_seed() {
        let config = small_config();
        let a = run_butterflies(&config).unwrap();
        let b = run_butterflies(&config).unwrap();
        assert_eq!(a, b);
        let c = run_butterflies(&ButterflyScenarioConfig { seed: 43, ..config }).unwrap();
        assert_ne!(a.records, c.records);
    }

    #[test]
    fn rejects_bad_configs() {
        let good = ButterflyScenarioConfig::default();
        let odd_directions = ButterflyScenarioConfig {
            n_directions: 15,
            ..good
        };
        assert!(odd_directions.validate().is_err());
        let zero_threshold = ButterflyScenarioConfig {
            threshold_fraction: 0.0,
            ..good
        };
        assert!(zero_threshold.validate().is_err());
        let big_lambda = ButterflyScenarioConfig {
            lambda: 1.2,
            ..good
        };
        assert!(big_lambda.validate().is_err());
    }
}
