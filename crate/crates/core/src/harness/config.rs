use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::asymptotics::Calibration;
use crate::error::{Error, Result};
use crate::rte::{rho_lower_bound, RteOptions};
use crate::scenario::{Scenario, ScenarioConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    LargeN,
    LargeNn,
    Both,
}

impl Regime {
    pub fn includes_large_n(self) -> bool {
        matches!(self, Regime::LargeN | Regime::Both)
    }

    pub fn includes_large_nn(self) -> bool {
        matches!(self, Regime::LargeNn | Regime::Both)
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "large_n" => Ok(Regime::LargeN),
            "large_nn" => Ok(Regime::LargeNn),
            "both" => Ok(Regime::Both),
            other => Err(Error::Config(format!("unknown regime {other:?}"))),
        }
    }
}

/// Experiment grid and Monte Carlo budgets.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub rho_list: Vec<f64>,
    pub n_list: Vec<usize>,
    pub n_trials: usize,
    pub seed: u64,
    pub regime: Regime,
    pub output_dir: PathBuf,
    /// `0` selects Freedman–Diaconis binning.
    pub histogram_bins: usize,
    /// Snapshot count and replications for the `M₁`/`M₂` estimate.
    pub n_cal: usize,
    pub n_reps: usize,
    /// Draws of the loaded Gaussian model behind the large-(N,n) centring.
    pub surrogate_trials: usize,
    pub rte: RteOptions,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            scenario: Scenario::baseline(),
            rho_list: vec![0.1, 0.5, 0.9],
            n_list: vec![20, 40, 60, 80, 100],
            n_trials: 5000,
            seed: 1,
            regime: Regime::Both,
            output_dir: PathBuf::from("out"),
            histogram_bins: 0,
            n_cal: 2000,
            n_reps: 400,
            surrogate_trials: 5000,
            rte: RteOptions::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn calibration(&self) -> Calibration {
        Calibration {
            n_cal: self.n_cal,
            n_reps: self.n_reps,
            seed: self.seed,
        }
    }

    pub fn check_cell(&self, rho: f64, n: usize) -> Result<()> {
        let lower = rho_lower_bound(n, self.scenario.n_sensors);
        if rho > lower && rho <= 1.0 && n >= 1 {
            Ok(())
        } else {
            Err(Error::InvalidRho {
                rho,
                lower,
                n,
                n_sensors: self.scenario.n_sensors,
            })
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        if self.n_trials < 100 {
            return Err(Error::Config(format!(
                "n_trials must be at least 100, got {}",
                self.n_trials
            )));
        }
        if self.surrogate_trials < 2 {
            return Err(Error::Config("surrogate_trials must be at least 2".into()));
        }
        if self.rho_list.is_empty() || self.n_list.is_empty() {
            return Err(Error::Config("empty rho or n grid".into()));
        }
        for &rho in &self.rho_list {
            for &n in &self.n_list {
                self.check_cell(rho, n)?;
            }
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: ExperimentFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        file.into_config()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }
}

/// TOML layout of an experiment file; every key is optional and falls back
/// to [`ExperimentConfig::default`].
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    pub scenario: Option<ScenarioConfig>,
    pub rho_list: Option<Vec<f64>>,
    pub n_list: Option<Vec<usize>>,
    pub n_trials: Option<usize>,
    pub seed: Option<u64>,
    pub regime: Option<Regime>,
    pub output_dir: Option<PathBuf>,
    pub histogram_bins: Option<usize>,
    pub n_cal: Option<usize>,
    pub n_reps: Option<usize>,
    pub surrogate_trials: Option<usize>,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
}

impl ExperimentFile {
    pub fn into_config(self) -> Result<ExperimentConfig> {
        let d = ExperimentConfig::default();
        let scenario_seed = self.scenario.as_ref().and_then(|s| s.seed);
        let scenario = match self.scenario {
            Some(s) => s.to_scenario()?,
            None => d.scenario,
        };
        Ok(ExperimentConfig {
            scenario,
            rho_list: self.rho_list.unwrap_or(d.rho_list),
            n_list: self.n_list.unwrap_or(d.n_list),
            n_trials: self.n_trials.unwrap_or(d.n_trials),
            seed: self.seed.or(scenario_seed).unwrap_or(d.seed),
            regime: self.regime.unwrap_or(d.regime),
            output_dir: self.output_dir.unwrap_or(d.output_dir),
            histogram_bins: self.histogram_bins.unwrap_or(d.histogram_bins),
            n_cal: self.n_cal.unwrap_or(d.n_cal),
            n_reps: self.n_reps.unwrap_or(d.n_reps),
            surrogate_trials: self.surrogate_trials.unwrap_or(d.surrogate_trials),
            rte: RteOptions {
                tol: self.tol.unwrap_or(d.rte.tol),
                max_iter: self.max_iter.unwrap_or(d.rte.max_iter),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        ExperimentConfig::default().validate().unwrap();
    }

    #[test]
    fn parse_full_file() {
        let cfg = ExperimentConfig::from_toml_str(
            r#"
            rho_list = [0.5]
            n_list = [20, 40]
            n_trials = 300
            regime = "large_nn"
            histogram_bins = 32

            [scenario]
            n_sensors = 8
            interferer_angles_deg = [30.0]
            interferer_inr_db = [20.0]
            seed = 42
            [scenario.texture]
            kind = "exponential"
            "#,
        )
        .unwrap();
        assert_eq!(cfg.scenario.n_sensors, 8);
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.regime, Regime::LargeNn);
        assert_eq!(cfg.n_trials, 300);
        assert_eq!(cfg.n_cal, 2000);
        assert!((cfg.scenario.interferers[0].power - 100.0).abs() < 1e-9);
        cfg.validate().unwrap();
    }

    #[test]
    fn inadmissible_cells_rejected() {
        let cfg = ExperimentConfig {
            scenario: Scenario::baseline_with_sensors(32),
            rho_list: vec![0.3],
            n_list: vec![16],
            ..ExperimentConfig::default()
        };
        // 1 − n/N = 0.5 ≥ 0.3
        assert!(matches!(cfg.validate(), Err(Error::InvalidRho { .. })));
        let few = ExperimentConfig {
            n_trials: 99,
            ..ExperimentConfig::default()
        };
        assert!(few.validate().is_err());
        assert!(ExperimentConfig::from_toml_str("bogus = 1").is_err());
        assert!("sideways".parse::<Regime>().is_err());
    }
}
