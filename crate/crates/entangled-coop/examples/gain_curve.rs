//! How the cooperation advantage depends on the friction threshold.
//!
//! Uses the quadrature oracle (no sampling noise) to trace the ratio of
//! expected forward progress, correlated over independent, as the
//! threshold sweeps from free sliding to the combined strength. Equal
//! ants show one step; unequal ants add a plateau per solo strength.

use entangled_coop::expectation::{sweep_gain_curve, QuadratureSpec};

fn main() {
    let spec = QuadratureSpec::with_grid(1024);
    let thresholds: Vec<f64> = (0..=40).map(|k| k as f64 * 0.05).collect();

    let equal = sweep_gain_curve(1.0, 1.0, &thresholds, 0.5, &spec).expect("valid sweep");
    let unequal = sweep_gain_curve(0.9, 1.1, &thresholds, 0.5, &spec).expect("valid sweep");

    println!("Expected-progress ratio, correlated / independent");
    println!(
        "{:>6} {:>18} {:>18}",
        "f_min", "equal (1.0, 1.0)", "unequal (0.9, 1.1)"
    );
    for (e, u) in equal.iter().zip(&unequal) {
        let show = |p: &entangled_coop::expectation::GainCurvePoint| match p.ratio {
            Some(r) => format!("{r:.4}"),
            None => "degenerate".to_string(),
        };
        println!("{:>6.2} {:>18} {:>18}", e.f_min, show(e), show(u));
    }

    println!();
    println!("Reading the curve: below every solo strength the modes tie (ratio 1);");
    println!("each time the threshold passes a strength, solo pushes stop counting");
    println!("and the ratio jumps; as it nears the combined strength only perfectly");
    println!("aligned joint pushes move the pebble, and the ratio approaches 2 \u{2014}");
    println!("the correlated pair pushes together twice as often as independent coins.");
    println!("At the combined strength itself both expectations vanish. Depending on");
    println!("the grid the sweep then reports the aligned-push limit of exactly 2 or");
    println!("flags the point degenerate instead of dividing zero by zero.");
}
