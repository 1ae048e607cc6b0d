//! Pebble trajectories under correlated vs independent pushing.
//!
//! Runs two seeded pushes per mode with the default scenario (strengths
//! 0.9 and 1.1, friction threshold 1.5, forward-biased directions) and
//! prints how far the pebble travels toward the goal, plus a sparse look
//! at one trajectory. The correlated ants synchronize their pushes, so
//! their pebble goes much farther on the same number of attempts.

use entangled_coop::ant::{run_ants, AntScenarioConfig};
use entangled_coop::correlation::EntanglementMode;
use entangled_coop::harness::derive_seed;

fn main() {
    let base = AntScenarioConfig::default();
    println!(
        "{} attempts per run, strengths ({}, {}), f_min {}, z {:.3}",
        base.n_attempts, base.strength_1, base.strength_2, base.f_min, base.z
    );
    println!();
    println!(
        "{:<12} {:>4} {:>10} {:>10} {:>6} {:>6} {:>7} {:>6}",
        "mode", "run", "final y", "final x", "solo", "joint", "futile", "idle"
    );

    for mode in [EntanglementMode::Triplet, EntanglementMode::Independent] {
        for run_index in 0..2u64 {
            let config = AntScenarioConfig {
                mode,
                seed: derive_seed(base.seed, run_index),
                ..base
            };
            let run = run_ants(&config).expect("default scenario is valid");
            let s = run.summary;
            println!(
                "{:<12} {:>4} {:>10.2} {:>10.2} {:>6} {:>6} {:>7} {:>6}",
                mode.label(),
                run_index,
                s.final_position.y,
                s.final_position.x,
                s.solo_moves,
                s.joint_moves,
                s.futile_pushes,
                s.idle_attempts
            );
        }
    }

    let config = AntScenarioConfig {
        mode: EntanglementMode::Triplet,
        seed: derive_seed(base.seed, 0),
        ..base
    };
    let run = run_ants(&config).unwrap();
    println!();
    println!("Correlated run 0, goal-axis progress every 100 attempts:");
    for (i, point) in run.path.points.iter().enumerate().step_by(100) {
        println!("  attempt {i:>4}: y = {:>7.2}", point.y);
    }
    let last = run.path.points.len() - 1;
    if !last.is_multiple_of(100) {
        println!(
            "  attempt {last:>4}: y = {:>7.2}",
            run.path.final_position().y
        );
    }
}
