//! Joint statistics of a pair of binary (±) decisions.
//!
//! Each agent measures its half of a shared spin pair along its own axis.
//! The joint outcome distribution depends only on the angle between the two
//! axes; in independent mode the agents flip private fair coins instead.

use rand::Rng;
use serde::{Deserialize, Serialize};

/// How the two binary decisions are coupled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntanglementMode {
    /// Anti-correlated pair: equal outcomes have probability sin²(α/2).
    Singlet,
    /// Correlated pair: equal outcomes have probability cos²(α/2).
    Triplet,
    /// Two private fair coins; every joint outcome has probability ¼.
    Independent,
}

impl EntanglementMode {
    pub fn label(self) -> &'static str {
        match self {
            EntanglementMode::Singlet => "singlet",
            EntanglementMode::Triplet => "triplet",
            EntanglementMode::Independent => "independent",
        }
    }
}

impl std::str::FromStr for EntanglementMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "singlet" => Ok(EntanglementMode::Singlet),
            "triplet" => Ok(EntanglementMode::Triplet),
            "independent" => Ok(EntanglementMode::Independent),
            other => Err(format!(
                "unknown mode {other:?}; expected singlet, triplet, or independent"
            )),
        }
    }
}

/// Measurement direction in radians. Stored raw; any angle is valid and
/// reduction happens implicitly inside the trigonometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementAxis(pub f64);

impl MeasurementAxis {
    pub fn radians(self) -> f64 {
        self.0
    }
}

/// One binary measurement outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn is_plus(self) -> bool {
        self == Outcome::Plus
    }
}

/// Joint outcome of one measurement on each half of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOutcome {
    pub first: Outcome,
    pub second: Outcome,
}

/// Probabilities of the four joint outcomes (first sign, second sign).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointProbabilities {
    pub p_pp: f64,
    pub p_mm: f64,
    pub p_pm: f64,
    pub p_mp: f64,
}

impl JointProbabilities {
    pub fn sum(&self) -> f64 {
        self.p_pp + self.p_mm + self.p_pm + self.p_mp
    }

    /// Probability that the first agent sees Plus.
    pub fn first_plus(&self) -> f64 {
        self.p_pp + self.p_pm
    }

    /// Probability that the second agent sees Plus.
    pub fn second_plus(&self) -> f64 {
        self.p_pp + self.p_mp
    }
}

/// Joint distribution for measurements along `axis1` and `axis2`.
///
/// Only the difference `axis1 - axis2` matters. Swapping singlet for triplet
/// is equivalent to rotating one axis by π.
pub fn joint_probabilities(
    mode: EntanglementMode,
    axis1: MeasurementAxis,
    axis2: MeasurementAxis,
) -> JointProbabilities {
    let alpha = axis1.radians() - axis2.radians();
    let half_sin2 = 0.5 * (alpha / 2.0).sin().powi(2);
    let half_cos2 = 0.5 * (alpha / 2.0).cos().powi(2);
    match mode {
        EntanglementMode::Singlet => JointProbabilities {
            p_pp: half_sin2,
            p_mm: half_sin2,
            p_pm: half_cos2,
            p_mp: half_cos2,
        },
        EntanglementMode::Triplet => JointProbabilities {
            p_pp: half_cos2,
            p_mm: half_cos2,
            p_pm: half_sin2,
            p_mp: half_sin2,
        },
        EntanglementMode::Independent => JointProbabilities {
            p_pp: 0.25,
            p_mm: 0.25,
            p_pm: 0.25,
            p_mp: 0.25,
        },
    }
}

/// Draw one joint outcome using a single uniform variate.
///
/// The categorical order is fixed as (++, −−, +−, −+) so that a given seed
/// always produces the same outcome stream.
pub fn sample_pair<R: Rng + ?Sized>(
    mode: EntanglementMode,
    axis1: MeasurementAxis,
    axis2: MeasurementAxis,
    rng: &mut R,
) -> PairOutcome {
    let p = joint_probabilities(mode, axis1, axis2);
    let u: f64 = rng.random();
    let (first, second) = if u < p.p_pp {
        (Outcome::Plus, Outcome::Plus)
    } else if u < p.p_pp + p.p_mm {
        (Outcome::Minus, Outcome::Minus)
    } else if u < p.p_pp + p.p_mm + p.p_pm {
        (Outcome::Plus, Outcome::Minus)
    } else {
        (Outcome::Minus, Outcome::Plus)
    };
    PairOutcome { first, second }
}
