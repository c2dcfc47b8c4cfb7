use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rtemvdr::harness::{ExperimentConfig, Regime};
use rtemvdr::Result;

#[derive(Debug, Parser)]
#[command(name = "rtemvdr", version, about = "Regularized Tyler MVDR beamformer lab")]
pub struct Cli {
    /// Size of the worker pool; defaults to the number of CPUs.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the regularized Tyler equation for one batch of snapshots.
    SolveRte(GridArgs),
    /// Print the deterministic equivalents for each (rho, n) cell.
    Asymptotics(GridArgs),
    /// Write standardized SNR samples for each cell.
    Clt(GridArgs),
    /// Run the divergence sweep and write its CSV.
    Sweep(GridArgs),
    /// Render SVG figures from sweep and sample CSV files.
    Render(RenderArgs),
}

/// Flags mirroring the experiment configuration keys. Flags override values
/// from `--config`.
#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n_sensors: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub rho: Option<Vec<f64>>,
    #[arg(long = "n", value_delimiter = ',')]
    pub n_list: Option<Vec<usize>>,
    #[arg(long)]
    pub n_trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub regime: Option<RegimeArg>,
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
    /// Histogram bin count; 0 selects Freedman–Diaconis.
    #[arg(long)]
    pub histogram_bins: Option<usize>,
    #[arg(long)]
    pub n_cal: Option<usize>,
    #[arg(long)]
    pub n_reps: Option<usize>,
    #[arg(long)]
    pub surrogate_trials: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum RegimeArg {
    LargeN,
    LargeNn,
    Both,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::LargeN => Regime::LargeN,
            RegimeArg::LargeNn => Regime::LargeNn,
            RegimeArg::Both => Regime::Both,
        }
    }
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Sweep CSV written by `sweep`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Samples CSV written by `clt`.
    #[arg(long)]
    pub samples: Option<PathBuf>,
    #[arg(long, default_value = "figures")]
    pub output_dir: PathBuf,
}

impl GridArgs {
    pub fn to_config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(n) = self.n_sensors {
            cfg.scenario.n_sensors = n;
        }
        if let Some(v) = &self.rho {
            cfg.rho_list = v.clone();
        }
        if let Some(v) = &self.n_list {
            cfg.n_list = v.clone();
        }
        if let Some(v) = self.n_trials {
            cfg.n_trials = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.regime {
            cfg.regime = v.into();
        }
        if let Some(v) = &self.output_dir {
            cfg.output_dir = v.clone();
        }
        if let Some(v) = self.histogram_bins {
            cfg.histogram_bins = v;
        }
        if let Some(v) = self.n_cal {
            cfg.n_cal = v;
        }
        if let Some(v) = self.n_reps {
            cfg.n_reps = v;
        }
        if let Some(v) = self.surrogate_trials {
            cfg.surrogate_trials = v;
        }
        if let Some(v) = self.tol {
            cfg.rte.tol = v;
        }
        if let Some(v) = self.max_iter {
            cfg.rte.max_iter = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
