//! One mutual search, round by round.
//!
//! Uses coarse flights (length 40, meeting distance 40) so one search
//! fits on a screen. Each round both butterflies pick a compass direction,
//! the shared pair decision says who flies, and fliers keep the move only
//! if the scent improved enough; a rejected flier returns, paying for both
//! legs. The separation column is recovered from the launch-time scent.

use entangled_coop::butterfly::{run_butterflies, ButterflyScenarioConfig};
use entangled_coop::correlation::EntanglementMode;

fn main() {
    let config = ButterflyScenarioConfig {
        step_length: 40.0,
        meet_distance: 40.0,
        mode: EntanglementMode::Singlet,
        seed: 11,
        ..ButterflyScenarioConfig::default()
    };
    let run = run_butterflies(&config).expect("valid scenario");

    println!(
        "Singlet search: start {} apart, flights of {}, meet at {}",
        config.initial_distance, config.step_length, config.meet_distance
    );
    println!();
    println!(
        "{:>5} {:>10}  {:<22} {:<22} {:>7}",
        "round", "apart", "butterfly 1", "butterfly 2", "flights"
    );

    let describe = |direction: usize, flew: bool, accepted: bool| {
        if !flew {
            format!("rests (dir {direction:>2})")
        } else if accepted {
            format!("flies dir {direction:>2}, stays")
        } else {
            format!("flies dir {direction:>2}, returns")
        }
    };

    let shown = 25.min(run.records.len());
    for r in &run.records[..shown] {
        let separation = 1.0 / r.intensity_before_1.sqrt();
        println!(
            "{:>5} {:>10.1}  {:<22} {:<22} {:>7}",
            r.round,
            separation,
            describe(r.direction_1, r.flew_1, r.accepted_1),
            describe(r.direction_2, r.flew_2, r.accepted_2),
            r.flights_this_round
        );
    }
    if run.records.len() > shown {
        println!("{:>5}", "...");
    }

    let s = run.summary;
    println!();
    println!(
        "met after {} rounds and {} flights (final separation {:.1})",
        s.rounds, s.total_flights, s.final_distance
    );

    println!();
    println!("Learned direction weights at the end (exponent of 1 + lambda):");
    for (who, state) in ["butterfly 1", "butterfly 2"].iter().zip(&run.final_states) {
        let best = state
            .weight_exponents
            .iter()
            .enumerate()
            .max_by_key(|(_, k)| **k)
            .unwrap();
        println!(
            "  {who}: favors direction {} (exponent {}), best scent gain {:.2e}",
            best.0, best.1, state.max_increase
        );
    }
}
