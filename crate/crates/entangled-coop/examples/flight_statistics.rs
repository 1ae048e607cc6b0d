//! Flight-count distributions: does shared randomness save travel?
//!
//! Runs 40 full searches per coupling mode at the reference scale (start
//! 1600 apart, flights of length 5) and compares how many flights the
//! pair spends before meeting. Flying on the same rounds keeps the scent
//! gradient readable — a solo flier's small gain is often rejected — so
//! the singlet pair needs far fewer flights than independent coins.

use entangled_coop::butterfly::ButterflyScenarioConfig;
use entangled_coop::correlation::EntanglementMode;
use entangled_coop::harness::run_butterfly_batch;

fn main() {
    let base = ButterflyScenarioConfig::default();
    let n_runs = 40;
    println!(
        "{n_runs} searches per mode: start {} apart, step {}, lambda {}",
        base.initial_distance, base.step_length, base.lambda
    );
    println!();
    println!(
        "{:<12} {:>10} {:>10} {:>10} {:>10} {:>8}",
        "mode", "mean", "std", "min", "max", "stuck"
    );

    let mut means = Vec::new();
    for mode in [EntanglementMode::Singlet, EntanglementMode::Independent] {
        let config = ButterflyScenarioConfig { mode, ..base };
        let (stats, rows) =
            run_butterfly_batch(&config, n_runs, base.seed).expect("valid scenario");
        let stuck = rows.iter().filter(|r| !r.converged).count();
        println!(
            "{:<12} {:>10.1} {:>10.1} {:>10.0} {:>10.0} {:>8}",
            mode.label(),
            stats.mean,
            stats.std_dev,
            stats.min,
            stats.max,
            stuck
        );
        means.push(stats.mean);
    }

    println!();
    println!(
        "flight-count ratio singlet / independent: {:.3}",
        means[0] / means[1]
    );
    println!("(each back-flight counts as a second flight: this is total distance");
    println!("flown, in units of the step length)");
}
