//! Does shared entangled randomness help two separated agents cooperate?
//!
//! Two agents each make a binary go/no-go decision per round without
//! communicating. This crate compares decisions drawn from a shared
//! spin pair — measured by each agent along its own direction — against
//! independent fair coins, in two toy scenarios:
//!
//! * **Ants** ([`ant`]): two ants of different strengths push a pebble
//!   toward a goal; the pebble only moves when the net force beats static
//!   friction, so pushing together (or resting together) pays off.
//! * **Butterflies** ([`butterfly`]): two butterflies search for each other
//!   by scent, learning direction preferences as they go; every flight
//!   costs distance, so flying on the same rounds helps them read each
//!   other's progress.
//!
//! The [`expectation`] module is a deterministic quadrature oracle for the
//! ant scenario: it integrates the expected per-attempt displacement
//! exactly (no Monte Carlo) and maps how the entangled/independent
//! advantage depends on the friction threshold. [`harness`] adds seeded
//! batch running, parameter sweeps, TOML experiment files, and CSV/JSON
//! emission; [`selftest`] is a built-in property suite.
//!
//! Start with the examples, one per capability:
//!
//! ```text
//! cargo run --example pair_statistics    # joint decision laws and sampling
//! cargo run --example pebble_paths       # ant trajectories, both modes
//! cargo run --example gain_curve         # advantage vs friction threshold
//! cargo run --example butterfly_trace    # one coarse search, round by round
//! cargo run --example flight_statistics  # flight-count distributions
//! cargo run --example lambda_sweep       # learning-rate sweep, both modes
//! ```
//!
//! The same capabilities are exposed as a CLI:
//!
//! ```text
//! cargo run -- ants --runs 4 --seed 7 --format json
//! cargo run -- butterflies --config presets/fig3b.cfg --out flights.csv
//! cargo run -- sweep-fmin --out curve.csv
//! cargo run -- selftest
//! ```

pub mod ant;
pub mod butterfly;
pub mod correlation;
pub mod expectation;
pub mod harness;
pub mod selftest;
pub mod vec2;

pub use correlation::EntanglementMode;
pub use vec2::Vec2;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A configuration field failed validation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid {field}: {message}")]
pub struct ValidationError {
    pub field: &'static str,
    pub message: String,
}

impl ValidationError {
    pub fn new(field: &'static str, message: impl Into<String>) -> Self {
        ValidationError {
            field,
            message: message.into(),
        }
    }
}

/// The RNG behind every simulation: a seeded stream cipher, so identical
/// seeds reproduce identical runs across platforms and releases.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
