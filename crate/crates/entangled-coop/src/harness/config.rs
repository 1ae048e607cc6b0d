//! Experiment files: TOML presets resolved into scenario configs.
//!
//! Every field is optional; unset values fall back to the scenario
//! defaults. The CLI applies its flag overrides by writing into the parsed
//! [`ExperimentConfig`] before resolving it.

use crate::ant::AntScenarioConfig;
use crate::butterfly::ButterflyScenarioConfig;
use crate::correlation::EntanglementMode;
use crate::expectation::QuadratureSpec;
use serde::Deserialize;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("failed to read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to parse {}: {source}", path.display())]
    Parse {
        path: PathBuf,
        #[source]
        source: Box<toml::de::Error>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    Ants,
    Butterflies,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: Option<ScenarioKind>,
    pub mode: Option<EntanglementMode>,
    pub seed: Option<u64>,
    pub runs: Option<u64>,
    #[serde(default)]
    pub ants: AntSection,
    #[serde(default)]
    pub butterflies: ButterflySection,
    #[serde(default)]
    pub sweep: SweepSection,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AntSection {
    pub strength_1: Option<f64>,
    pub strength_2: Option<f64>,
    pub f_min: Option<f64>,
    pub z: Option<f64>,
    pub g: Option<f64>,
    pub attempts: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ButterflySection {
    pub initial_distance: Option<f64>,
    pub step_length: Option<f64>,
    pub lambda: Option<f64>,
    pub threshold_fraction: Option<f64>,
    pub n_directions: Option<usize>,
    pub meet_distance: Option<f64>,
    pub max_rounds: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub f_min: Option<SweepValues>,
    pub lambda: Option<Vec<f64>>,
    pub grid_points: Option<usize>,
}

/// A sweep axis: either explicit values or an inclusive evenly spaced range.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SweepValues {
    List(Vec<f64>),
    Range { start: f64, stop: f64, count: usize },
}

impl SweepValues {
    pub fn values(&self) -> Vec<f64> {
        match self {
            SweepValues::List(values) => values.clone(),
            SweepValues::Range { start, stop, count } => {
                if *count <= 1 {
                    return vec![*start];
                }
                (0..*count)
                    .map(|i| start + (stop - start) * i as f64 / (*count as f64 - 1.0))
                    .collect()
            }
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| ConfigError::Parse {
            path: path.to_path_buf(),
            source: Box::new(source),
        })
    }

    /// Resolve the ant scenario; the entangled (triplet) variant unless the
    /// file or a flag picked a mode.
    pub fn ant_scenario(&self) -> AntScenarioConfig {
        let d = AntScenarioConfig::default();
        AntScenarioConfig {
            strength_1: self.ants.strength_1.unwrap_or(d.strength_1),
            strength_2: self.ants.strength_2.unwrap_or(d.strength_2),
            f_min: self.ants.f_min.unwrap_or(d.f_min),
            z: self.ants.z.unwrap_or(d.z),
            g: self.ants.g.unwrap_or(d.g),
            n_attempts: self.ants.attempts.unwrap_or(d.n_attempts),
            mode: self.mode.unwrap_or(d.mode),
            seed: self.seed.unwrap_or(d.seed),
        }
    }

    /// Resolve the butterfly scenario; when unset, the meeting distance
    /// follows the (possibly overridden) step length.
    pub fn butterfly_scenario(&self) -> ButterflyScenarioConfig {
        let d = ButterflyScenarioConfig::default();
        let step_length = self.butterflies.step_length.unwrap_or(d.step_length);
        ButterflyScenarioConfig {
            initial_distance: self
                .butterflies
                .initial_distance
                .unwrap_or(d.initial_distance),
            step_length,
            lambda: self.butterflies.lambda.unwrap_or(d.lambda),
            threshold_fraction: self
                .butterflies
                .threshold_fraction
                .unwrap_or(d.threshold_fraction),
            n_directions: self.butterflies.n_directions.unwrap_or(d.n_directions),
            meet_distance: self.butterflies.meet_distance.unwrap_or(step_length),
            mode: self.mode.unwrap_or(d.mode),
            seed: self.seed.unwrap_or(d.seed),
            max_rounds: self.butterflies.max_rounds.unwrap_or(d.max_rounds),
        }
    }

    pub fn runs_or(&self, default: u64) -> u64 {
        self.runs.unwrap_or(default)
    }

    pub fn base_seed(&self) -> u64 {
        self.seed.unwrap_or(42)
    }

    /// Threshold grid for gain-curve sweeps; defaults to 41 points across
    /// the full reachable range for unit-strength pairs.
    pub fn f_min_values(&self) -> Vec<f64> {
        match &self.sweep.f_min {
            Some(values) => values.values(),
            None => SweepValues::Range {
                start: 0.0,
                stop: 2.0,
                count: 41,
            }
            .values(),
        }
    }

    pub fn lambda_values(&self) -> Vec<f64> {
        self.sweep
            .lambda
            .clone()
            .unwrap_or_else(|| vec![0.0, 0.25, 0.5, 0.75, 1.0])
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        match self.sweep.grid_points {
            Some(grid) => QuadratureSpec::with_grid(grid),
            None => QuadratureSpec::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> ExperimentConfig {
        toml::from_str(text).unwrap()
    }

    #[test]
    fn empty_config_resolves_to_defaults() {
        let config = parse("");
        assert_eq!(config.ant_scenario(), AntScenarioConfig::default());
        assert_eq!(
            config.butterfly_scenario(),
            ButterflyScenarioConfig::default()
        );
        assert_eq!(config.runs_or(40), 40);
        assert_eq!(config.lambda_values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(config.f_min_values().len(), 41);
    }

    #[test]
    fn full_config_overrides_everything() {
        let config = parse(
            r#"
            scenario = "butterflies"
            mode = "independent"
            seed = 7
            runs = 12

            [butterflies]
            initial_distance = 800.0
            step_length = 2.5
            lambda = 0.25
            threshold_fraction = 0.5
            n_directions = 8
            max_rounds = 5000
            "#,
        );
        assert_eq!(config.scenario, Some(ScenarioKind::Butterflies));
        let scenario = config.butterfly_scenario();
        assert_eq!(scenario.mode, EntanglementMode::Independent);
        assert_eq!(scenario.seed, 7);
        assert_eq!(scenario.initial_distance, 800.0);
        assert_eq!(scenario.lambda, 0.25);
        assert_eq!(scenario.n_directions, 8);
        assert_eq!(scenario.max_rounds, 5000);
        assert_eq!(config.runs_or(1), 12);
    }

    #[test]
    fn meet_distance_follows_step_length() {
        let config = parse("[butterflies]\nstep_length = 40.0\n");
        assert_eq!(config.butterfly_scenario().meet_distance, 40.0);
        let config = parse("[butterflies]\nstep_length = 40.0\nmeet_distance = 3.0\n");
        assert_eq!(config.butterfly_scenario().meet_distance, 3.0);
    }

    #[test]
    fn sweep_ranges_expand_inclusively() {
        let config = parse("[sweep]\nf_min = { start = 0.0, stop = 2.0, count = 5 }\n");
        assert_eq!(config.f_min_values(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        let config = parse("[sweep]\nf_min = [0.3, 1.7]\n");
        assert_eq!(config.f_min_values(), vec![0.3, 1.7]);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<ExperimentConfig>("[ants]\nstrenght_1 = 1.0\n").is_err());
        assert!(toml::from_str::<ExperimentConfig>("mode = \"psychic\"\n").is_err());
    }

    #[test]
    fn missing_files_report_their_path() {
        let err = ExperimentConfig::load(Path::new("/nonexistent/x.cfg")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/x.cfg"));
    }
}
