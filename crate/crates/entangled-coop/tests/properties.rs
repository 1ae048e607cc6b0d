//! Randomized property tests for the statistical core: probability laws,
//! sampler inversion, seed derivation, weight bookkeeping, validation, and
//! run determinism.

use entangled_coop::ant::{direction_density, run_ants, sample_direction, AntScenarioConfig};
use entangled_coop::butterfly::{
    evaluate_and_update, run_butterflies, scent_intensity, ButterflyScenarioConfig, ButterflyState,
};
use entangled_coop::correlation::{joint_probabilities, EntanglementMode, MeasurementAxis};
use entangled_coop::harness::derive_seed;
use entangled_coop::Vec2;
use proptest::prelude::*;
use rand::RngCore;
use std::f64::consts::PI;

const MODES: [EntanglementMode; 3] = [
    EntanglementMode::Singlet,
    EntanglementMode::Triplet,
    EntanglementMode::Independent,
];

fn mode_strategy() -> impl Strategy<Value = EntanglementMode> {
    prop::sample::select(MODES.to_vec())
}

/// Feeds one preset word to `next_u64`, so a drawn f64 is known exactly.
struct FixedWord(u64);

impl RngCore for FixedWord {
    fn next_u32(&mut self) -> u32 {
        self.next_u64() as u32
    }
    fn next_u64(&mut self) -> u64 {
        self.0
    }
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        dest.copy_from_slice(&self.0.to_le_bytes()[..dest.len()]);
    }
}

/// Cumulative distribution of the pushing direction for beta >= 0; the
/// density is symmetric, so the negative side follows by reflection.
fn direction_cdf(beta: f64, z: f64) -> f64 {
    let n = 1.0 / (PI * PI * (2.0 - z));
    if beta >= 0.0 {
        0.5 + n * (PI * beta - z * beta * beta / 2.0)
    } else {
        1.0 - direction_cdf(-beta, z)
    }
}

proptest! {
    /// The four joint probabilities are nonnegative, sum to one, and give
    /// each agent an unconditional 1/2 regardless of axes or mode.
    #[test]
    fn probabilities_form_a_balanced_distribution(
        mode in mode_strategy(),
        a1 in -10.0f64..10.0,
        a2 in -10.0f64..10.0,
    ) {
        let p = joint_probabilities(mode, MeasurementAxis(a1), MeasurementAxis(a2));
        for value in [p.p_pp, p.p_mm, p.p_pm, p.p_mp] {
            prop_assert!((0.0..=0.5 + 1e-12).contains(&value));
        }
        prop_assert!((p.sum() - 1.0).abs() <= 1e-12);
        prop_assert!((p.first_plus() - 0.5).abs() <= 1e-12);
        prop_assert!((p.second_plus() - 0.5).abs() <= 1e-12);
    }

    /// Rotating both axes together leaves every probability unchanged up to
    /// the rounding of the axis difference.
    #[test]
    fn probabilities_depend_only_on_the_axis_difference(
        mode in mode_strategy(),
        a1 in -10.0f64..10.0,
        a2 in -10.0f64..10.0,
        shift in -1e3f64..1e3,
    ) {
        let p = joint_probabilities(mode, MeasurementAxis(a1), MeasurementAxis(a2));
        let q = joint_probabilities(
            mode,
            MeasurementAxis(a1 + shift),
            MeasurementAxis(a2 + shift),
        );
        for (x, y) in [
            (p.p_pp, q.p_pp),
            (p.p_mm, q.p_mm),
            (p.p_pm, q.p_pm),
            (p.p_mp, q.p_mp),
        ] {
            prop_assert!((x - y).abs() <= 1e-9, "{x} vs {y} after shift {shift}");
        }
    }

    /// Singlet and triplet are each other's agree/disagree mirror images:
    /// the same axes swap the diagonal and off-diagonal probabilities.
    #[test]
    fn singlet_and_triplet_are_duals(
        a1 in -1e3f64..1e3,
        a2 in -1e3f64..1e3,
    ) {
        let s = joint_probabilities(EntanglementMode::Singlet, MeasurementAxis(a1), MeasurementAxis(a2));
        let t = joint_probabilities(EntanglementMode::Triplet, MeasurementAxis(a1), MeasurementAxis(a2));
        prop_assert_eq!(s.p_pp, t.p_pm);
        prop_assert_eq!(s.p_mm, t.p_mp);
        prop_assert_eq!(s.p_pm, t.p_pp);
        prop_assert_eq!(s.p_mp, t.p_mm);
    }

    /// Independent decisions put exactly 1/4 on every outcome.
    #[test]
    fn independent_mode_is_uniform(
        a1 in -1e3f64..1e3,
        a2 in -1e3f64..1e3,
    ) {
        let p = joint_probabilities(
            EntanglementMode::Independent,
            MeasurementAxis(a1),
            MeasurementAxis(a2),
        );
        prop_assert_eq!(p.p_pp, 0.25);
        prop_assert_eq!(p.p_mm, 0.25);
        prop_assert_eq!(p.p_pm, 0.25);
        prop_assert_eq!(p.p_mp, 0.25);
    }

    /// The direction sampler stays in [-pi, pi] and inverts the cumulative
    /// distribution: pushing the sampled angle back through the CDF
    /// recovers the uniform variate that produced it.
    #[test]
    fn direction_sampler_inverts_the_cdf(
        word in any::<u64>(),
        z in 0.0f64..=1.0,
    ) {
        let mut rng = FixedWord(word);
        let beta = sample_direction(z, &mut rng);
        prop_assert!((-PI..=PI).contains(&beta));
        prop_assert!(direction_density(beta, z) >= 0.0);
        let u = (word >> 11) as f64 / (1u64 << 53) as f64;
        prop_assert!((direction_cdf(beta, z) - u).abs() <= 1e-9);
    }

    /// Seed derivation is deterministic and collision-free across runs of
    /// the same batch.
    #[test]
    fn derived_seeds_are_stable_and_distinct(
        base in any::<u64>(),
        i in 0u64..10_000,
        j in 0u64..10_000,
    ) {
        prop_assert_eq!(derive_seed(base, i), derive_seed(base, i));
        if i != j {
            prop_assert_ne!(derive_seed(base, i), derive_seed(base, j));
        }
    }

    /// A butterfly's materialized weights always equal (1 + lambda) raised
    /// to the stored exponent, no matter the accept/reject history.
    #[test]
    fn weights_track_their_exponents_exactly(
        lambda in 0.0f64..=1.0,
        threshold in 0.01f64..=1.0,
        steps in prop::collection::vec((0usize..8, 0.0f64..2.0, 0.0f64..2.0), 0..64),
    ) {
        let mut state = ButterflyState::new(Vec2::ZERO, 8);
        for (direction, before, after) in steps {
            evaluate_and_update(&mut state, direction, before, after, lambda, threshold);
        }
        for (k, w) in state.weight_exponents.iter().zip(&state.weights) {
            prop_assert_eq!(*w, (1.0 + lambda).powi(*k));
            prop_assert!(w.is_finite() && *w > 0.0);
        }
    }

    /// Scent is flat inside the clamp radius and strictly decreasing
    /// outside it.
    #[test]
    fn scent_decreases_beyond_the_clamp(
        meet in 0.1f64..100.0,
        r1 in 0.0f64..1e4,
        r2 in 0.0f64..1e4,
    ) {
        let clamp = meet / 10.0;
        let (near, far) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        let (s_near, s_far) = (scent_intensity(near, meet), scent_intensity(far, meet));
        if far <= clamp {
            prop_assert_eq!(s_near, s_far);
        } else if near < far {
            prop_assert!(s_near >= s_far);
        }
        prop_assert!(s_near.is_finite() && s_far > 0.0);
    }

    /// Out-of-domain ant parameters are rejected by validation.
    #[test]
    fn ant_validation_rejects_bad_domains(
        strength in prop_oneof![Just(0.0), Just(-1.0), Just(f64::NAN), Just(f64::INFINITY)],
        z_bad in prop_oneof![Just(-0.1), Just(1.1), Just(f64::NAN)],
    ) {
        let good = AntScenarioConfig::default();
        let broken = [
            AntScenarioConfig { strength_1: strength, ..good },
            AntScenarioConfig { strength_2: strength, ..good },
            AntScenarioConfig { z: z_bad, ..good },
            AntScenarioConfig { f_min: -1.0, ..good },
            AntScenarioConfig { n_attempts: 0, ..good },
        ];
        for config in broken {
            let rejected = config.validate().is_err();
            prop_assert!(rejected, "accepted invalid config {config:?}");
        }
        let accepted = good.validate().is_ok();
        prop_assert!(accepted);
    }

    /// Out-of-domain butterfly parameters are rejected by validation.
    #[test]
    fn butterfly_validation_rejects_bad_domains(
        lambda_bad in prop_oneof![Just(-0.1), Just(1.5), Just(f64::NAN)],
        n_directions_bad in prop_oneof![Just(0usize), Just(1), Just(7)],
    ) {
        let good = ButterflyScenarioConfig::default();
        let broken = [
            ButterflyScenarioConfig { lambda: lambda_bad, ..good },
            ButterflyScenarioConfig { n_directions: n_directions_bad, ..good },
            ButterflyScenarioConfig { initial_distance: 0.0, ..good },
            ButterflyScenarioConfig { threshold_fraction: 0.0, ..good },
            ButterflyScenarioConfig { max_rounds: 0, ..good },
        ];
        for config in broken {
            let rejected = config.validate().is_err();
            prop_assert!(rejected, "accepted invalid config {config:?}");
        }
        let accepted = good.validate().is_ok();
        prop_assert!(accepted);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The same seed replays an identical ant run, and the recorded path is
    /// internally consistent: the final position is the sum of the per-step
    /// displacements and the move counts partition the attempts.
    #[test]
    fn ant_runs_are_deterministic_and_self_consistent(
        seed in any::<u64>(),
        mode in mode_strategy(),
        f_min in 0.0f64..2.5,
        z in 0.0f64..=1.0,
    ) {
        let config = AntScenarioConfig {
            f_min,
            z,
            mode,
            seed,
            n_attempts: 300,
            ..AntScenarioConfig::default()
        };
        let first = run_ants(&config).unwrap();
        let second = run_ants(&config).unwrap();
        prop_assert_eq!(&first, &second);

        let summary = &first.summary;
        let mut total = Vec2::ZERO;
        for record in &first.records {
            total += record.displacement();
        }
        prop_assert!((total.x - summary.final_position.x).abs() <= 1e-9);
        prop_assert!((total.y - summary.final_position.y).abs() <= 1e-9);
        prop_assert_eq!(
            summary.solo_moves + summary.joint_moves + summary.futile_pushes + summary.idle_attempts,
            config.n_attempts
        );
    }

    /// The same seed replays an identical butterfly run, and its flight
    /// accounting adds up: total flights equal the per-round counts and the
    /// run ends exactly when the meeting distance is reached (or the cap).
    #[test]
    fn butterfly_runs_are_deterministic_and_self_consistent(
        seed in any::<u64>(),
        mode in mode_strategy(),
        lambda in 0.0f64..=1.0,
    ) {
        let config = ButterflyScenarioConfig {
            initial_distance: 60.0,
            step_length: 5.0,
            meet_distance: 5.0,
            lambda,
            mode,
            seed,
            max_rounds: 20_000,
            ..ButterflyScenarioConfig::default()
        };
        let first = run_butterflies(&config).unwrap();
        let second = run_butterflies(&config).unwrap();
        prop_assert_eq!(&first, &second);

        let summary = &first.summary;
        let from_rounds: u64 = first
            .records
            .iter()
            .map(|r| r.flights_this_round as u64)
            .sum();
        prop_assert_eq!(summary.total_flights, from_rounds);
        prop_assert_eq!(summary.rounds, first.records.len() as u64);
        if summary.converged {
            prop_assert!(summary.final_distance <= config.meet_distance);
        } else {
            prop_assert_eq!(summary.rounds, config.max_rounds);
        }
        let final_separation = first.final_states[0]
            .position
            .distance(first.final_states[1].position);
        prop_assert!((final_separation - summary.final_distance).abs() <= 1e-9);
    }
}
