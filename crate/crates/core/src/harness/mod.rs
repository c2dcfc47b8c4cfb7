//! Monte Carlo experiment engine: CLT sample sets, divergence sweeps and
//! figure rendering.

mod clt;
mod config;
mod render;
mod sweep;

pub use clt::{
    large_n_standardizer, large_nn_standardizer, paired_equivalence_draws, raw_draws,
    run_clt_large_n, run_clt_large_nn, snr_draws, standardize, RegimeTag, SampleSet, Standardizer,
};
pub use config::{ExperimentConfig, ExperimentFile, Regime};
pub use render::{cdf_figure, distance_figure, emit_cdf_figure, emit_figures};
pub use sweep::{
    divergence_report, divergence_sweep, read_samples_csv, read_sweep_csv, read_sweep_file,
    write_samples_csv, write_sweep_csv, write_sweep_file, SweepRow, CSV_HEADER, SAMPLES_HEADER,
};
