//! Two ants pushing a pebble toward +y.
//!
//! Each attempt, both ants pick a direction from a forward-peaked wedge
//! density, then decide whether to push via one shared pair decision measured
//! along those directions. The pebble moves only if the resulting net force
//! reaches the static friction threshold `f_min`.

use crate::correlation::{sample_pair, EntanglementMode, MeasurementAxis};
use crate::vec2::Vec2;
use crate::ValidationError;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntScenarioConfig {
    /// Force magnitude of ant 1.
    pub strength_1: f64,
    /// Force magnitude of ant 2.
    pub strength_2: f64,
    /// Static friction threshold; a net force of exactly `f_min` still moves
    /// the pebble.
    pub f_min: f64,
    /// Forward bias of the direction density, 0 (uniform) to 1 (max taper).
    pub z: f64,
    /// Mobility: displacement is `g` times the net force.
    pub g: f64,
    /// Number of push attempts in one run.
    pub n_attempts: u64,
    pub mode: EntanglementMode,
    pub seed: u64,
}

impl Default for AntScenarioConfig {
    fn default() -> Self {
        AntScenarioConfig {
            strength_1: 0.9,
            strength_2: 1.1,
            f_min: 1.5,
            z: 2.0 / 3.0,
            g: 1.0,
            n_attempts: 600,
            mode: EntanglementMode::Triplet,
            seed: 42,
        }
    }
}

impl AntScenarioConfig {
    pub fn validate(&self) -> Result<(), ValidationError> {
        let check = |ok: bool, field: &'static str, message: &str| {
            if ok {
                Ok(())
            } else {
                Err(ValidationError::new(field, message))
            }
        };
        check(
            self.strength_1 > 0.0 && self.strength_1.is_finite(),
            "strength_1",
            "must be a positive finite number",
        )?;
        check(
            self.strength_2 > 0.0 && self.strength_2.is_finite(),
            "strength_2",
            "must be a positive finite number",
        )?;
        check(
            self.f_min >= 0.0 && self.f_min.is_finite(),
            "f_min",
            "must be finite and non-negative",
        )?;
        check((0.0..=1.0).contains(&self.z), "z", "must lie in [0, 1]")?;
        check(
            self.g > 0.0 && self.g.is_finite(),
            "g",
            "must be a positive finite number",
        )?;
        check(self.n_attempts >= 1, "n_attempts", "must be at least 1")?;
        Ok(())
    }
}

/// One push attempt. `dx`/`dy` are the pebble displacement (zero if the net
/// force stayed below threshold or nobody pushed).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PushRecord {
    pub attempt: u64,
    pub beta1: f64,
    pub beta2: f64,
    pub pushed1: bool,
    pub pushed2: bool,
    pub dx: f64,
    pub dy: f64,
}

impl PushRecord {
    pub fn displacement(&self) -> Vec2 {
        Vec2::new(self.dx, self.dy)
    }

    pub fn moved(&self) -> bool {
        self.dx != 0.0 || self.dy != 0.0
    }
}

/// Pebble trajectory: position before the first attempt (the origin) and
/// after every attempt.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PebblePath {
    pub points: Vec<Vec2>,
}

impl PebblePath {
    pub fn final_position(&self) -> Vec2 {
        *self.points.last().expect("path always has the origin")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntSummary {
    pub final_position: Vec2,
    /// Net distance along the goal axis (+y).
    pub forward_progress: f64,
    /// Attempts where one ant alone moved the pebble.
    pub solo_moves: u64,
    /// Attempts where both ants pushed and the pebble moved.
    pub joint_moves: u64,
    /// Attempts with at least one pusher but a net force below threshold.
    pub futile_pushes: u64,
    /// Attempts where neither ant pushed.
    pub idle_attempts: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AntRun {
    pub records: Vec<PushRecord>,
    pub path: PebblePath,
    pub summary: AntSummary,
}

/// Wedge density over [-π, π]: strongest straight ahead (β = 0), tapering
/// linearly by a factor controlled by `z`. Integrates to one.
pub fn direction_density(beta: f64, z: f64) -> f64 {
    let n = 1.0 / (PI * PI * (2.0 - z));
    n * (PI - z * beta.abs())
}

/// Draw a direction from the wedge density using a single uniform variate
/// and the closed-form inverse CDF.
pub fn sample_direction<R: Rng + ?Sized>(z: f64, rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    let n = 1.0 / (PI * PI * (2.0 - z));
    let t = (u - 0.5).abs();
    let c = t / n;
    // Root of n·(π β − z β²/2) = t, rearranged so the z → 0 limit is exact
    // instead of 0/0. The discriminant is (π(1−z))² in exact arithmetic;
    // clamp to zero against rounding at z = 1.
    let disc = (PI * PI - 2.0 * z * c).max(0.0);
    let beta = 2.0 * c / (PI + disc.sqrt());
    if u >= 0.5 {
        beta
    } else {
        -beta
    }
}

/// One attempt: two direction draws, one shared pair decision, then the
/// force/threshold bookkeeping. Consumes exactly three uniform variates.
pub fn push_attempt<R: Rng + ?Sized>(
    config: &AntScenarioConfig,
    attempt: u64,
    rng: &mut R,
) -> PushRecord {
    let beta1 = sample_direction(config.z, rng);
    let beta2 = sample_direction(config.z, rng);
    let outcome = sample_pair(
        config.mode,
        MeasurementAxis(beta1),
        MeasurementAxis(beta2),
        rng,
    );
    let pushed1 = outcome.first.is_plus();
    let pushed2 = outcome.second.is_plus();

    let mut force = Vec2::ZERO;
    if pushed1 {
        force += Vec2::new(beta1.sin(), beta1.cos()) * config.strength_1;
    }
    if pushed2 {
        force += Vec2::new(beta2.sin(), beta2.cos()) * config.strength_2;
    }
    // A lone pusher's force magnitude is its strength by definition; using
    // it directly keeps the threshold comparison exact there instead of
    // round-tripping through the sin/cos components.
    let magnitude = match (pushed1, pushed2) {
        (true, false) => config.strength_1,
        (false, true) => config.strength_2,
        _ => force.norm(),
    };
    let displacement = if (pushed1 || pushed2) && magnitude >= config.f_min {
        force * config.g
    } else {
        Vec2::ZERO
    };

    PushRecord {
        attempt,
        beta1,
        beta2,
        pushed1,
        pushed2,
        dx: displacement.x,
        dy: displacement.y,
    }
}

/// Run a full scenario from the configured seed.
pub fn run_ants(config: &AntScenarioConfig) -> Result<AntRun, ValidationError> {
    config.validate()?;
    let mut rng = crate::seeded_rng(config.seed);
    let mut records = Vec::with_capacity(config.n_attempts as usize);
    let mut points = Vec::with_capacity(config.n_attempts as usize + 1);
    let mut position = Vec2::ZERO;
    points.push(position);

    let (mut solo, mut joint, mut futile, mut idle) = (0u64, 0u64, 0u64, 0u64);
    for attempt in 0..config.n_attempts {
        let record = push_attempt(config, attempt, &mut rng);
        position += record.displacement();
        points.push(position);
        match (record.pushed1 || record.pushed2, record.moved()) {
            (false, _) => idle += 1,
            (true, false) => futile += 1,
            (true, true) => {
                if record.pushed1 && record.pushed2 {
                    joint += 1;
                } else {
                    solo += 1;
                }
            }
        }
        records.push(record);
    }

    let summary = AntSummary {
        final_position: position,
        forward_progress: position.y,
        solo_moves: solo,
        joint_moves: joint,
        futile_pushes: futile,
        idle_attempts: idle,
    };
    Ok(AntRun {
        records,
        path: PebblePath { points },
        summary,
    })
}
