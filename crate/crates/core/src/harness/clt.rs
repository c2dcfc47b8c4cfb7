//! Monte Carlo draws of the RTE-MVDR output SNR and their standardization
//! under the two asymptotic regimes.

use rayon::prelude::*;

use crate::asymptotics::{large_n_params, large_nn_params, LargeNParams, LargeNnParams};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::mvdr::output_snr;
use crate::rng::{self, domain};
use crate::rte::{solve_rte, RteOptions};
use crate::scenario::{build_covariance, Scenario, SnapshotSampler};

use super::config::ExperimentConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeTag {
    LargeN,
    LargeNn,
}

impl RegimeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RegimeTag::LargeN => "large_n",
            RegimeTag::LargeNn => "large_nn",
        }
    }
}

impl std::fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Standardized SNR deviations `√n (ŜNR − centre) / scale`, one per trial.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub values: Vec<f64>,
    pub regime: RegimeTag,
    pub n: usize,
    pub n_sensors: usize,
    pub rho: f64,
    pub seed: u64,
}

/// Centre and scale of one regime's standardization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Standardizer {
    pub center: f64,
    pub scale: f64,
}

impl Standardizer {
    pub fn apply(&self, raw: &[f64], n: usize) -> Vec<f64> {
        let root_n = (n as f64).sqrt();
        raw.iter()
            .map(|&v| root_n * (v - self.center) / self.scale)
            .collect()
    }
}

/// `ŜNR(ρ)` for `n_trials` independent snapshot batches; trial `t` draws
/// from the substream `(seed, t)`.
pub fn snr_draws(
    s: &Scenario,
    rho: f64,
    n: usize,
    n_trials: usize,
    seed: u64,
    opts: RteOptions,
) -> Result<Vec<f64>> {
    let sampler = SnapshotSampler::new(s)?;
    let sigma = build_covariance(s);
    let s0 = s.look_vector();
    let base = rng::derive(seed, domain::TRIALS);
    (0..n_trials)
        .into_par_iter()
        .map(|t| {
            let batch = sampler.sample(n, rng::derive(base, t as u64));
            let est = solve_rte(&batch, rho, opts)?;
            output_snr(&est.matrix, &sigma, &s0)
        }
        .map_err(|e: Error| e.in_trial(t)))
        .collect()
}

/// Paired draws for the equivalence check: per trial, the SNR of the RTE
/// and of the loaded Gaussian model built from the same `w_i`.
pub fn paired_equivalence_draws(
    s: &Scenario,
    rho: f64,
    n: usize,
    n_trials: usize,
    seed: u64,
    opts: RteOptions,
) -> Result<(Vec<f64>, Vec<f64>)> {
    use crate::asymptotics::{loading_factor, s_tilde_from_gaussian_part};
    use crate::linalg::HermitianEigen;

    let sampler = SnapshotSampler::new(s)?;
    let sigma = build_covariance(s);
    let alpha = loading_factor(&HermitianEigen::new(&sigma).values, rho, n)?;
    let s0 = s.look_vector();
    let base = rng::derive(seed, domain::EQUIVALENCE);
    let pairs: Vec<(f64, f64)> = (0..n_trials)
        .into_par_iter()
        .map(|t| {
            let batch = sampler.sample(n, rng::derive(base, t as u64));
            let est = solve_rte(&batch, rho, opts)?;
            let z: CMatrix = sampler.sqrt_sigma() * &batch.gaussians;
            let loaded = s_tilde_from_gaussian_part(&z, alpha);
            Ok((
                output_snr(&est.matrix, &sigma, &s0)?,
                output_snr(&loaded, &sigma, &s0)?,
            ))
        }
        .map_err(|e: Error| e.in_trial(t)))
        .collect::<Result<_>>()?;
    Ok(pairs.into_iter().unzip())
}

pub fn large_n_standardizer(cfg: &ExperimentConfig, rho: f64) -> Result<(Standardizer, LargeNParams)> {
    if rho == 1.0 {
        return Err(Error::DegenerateRho);
    }
    let params = large_n_params(&cfg.scenario, rho, cfg.calibration(), cfg.rte)?;
    if !(params.sigma_n > 0.0) {
        return Err(Error::DegenerateRho);
    }
    Ok((
        Standardizer {
            center: params.snr0,
            scale: params.sigma_n,
        },
        params,
    ))
}

pub fn large_nn_standardizer(
    cfg: &ExperimentConfig,
    rho: f64,
    n: usize,
) -> Result<(Standardizer, LargeNnParams)> {
    let params = large_nn_params(&cfg.scenario, rho, n, cfg.surrogate_trials, cfg.seed)?;
    Ok((
        Standardizer {
            center: params.center,
            scale: params.scale,
        },
        params,
    ))
}

fn sample_set(cfg: &ExperimentConfig, rho: f64, n: usize, regime: RegimeTag, values: Vec<f64>) -> SampleSet {
    SampleSet {
        values,
        regime,
        n,
        n_sensors: cfg.scenario.n_sensors,
        rho,
        seed: cfg.seed,
    }
}

pub fn raw_draws(cfg: &ExperimentConfig, rho: f64, n: usize) -> Result<Vec<f64>> {
    cfg.check_cell(rho, n)?;
    snr_draws(&cfg.scenario, rho, n, cfg.n_trials, cfg.seed, cfg.rte)
}

/// `Q_n = σ_n⁻¹ √n (ŜNR − SNR₀)`.
pub fn run_clt_large_n(cfg: &ExperimentConfig, rho: f64, n: usize) -> Result<SampleSet> {
    cfg.check_cell(rho, n)?;
    let (std, _) = large_n_standardizer(cfg, rho)?;
    let raw = raw_draws(cfg, rho, n)?;
    Ok(sample_set(cfg, rho, n, RegimeTag::LargeN, std.apply(&raw, n)))
}

/// `Q_{N,n} = σ_{N,n}⁻¹ √n (ŜNR − SNR̄)` with Monte Carlo centre and scale.
pub fn run_clt_large_nn(cfg: &ExperimentConfig, rho: f64, n: usize) -> Result<SampleSet> {
    cfg.check_cell(rho, n)?;
    let (std, _) = large_nn_standardizer(cfg, rho, n)?;
    let raw = raw_draws(cfg, rho, n)?;
    Ok(sample_set(cfg, rho, n, RegimeTag::LargeNn, std.apply(&raw, n)))
}

/// Standardizes one set of raw draws under the given regime.
pub fn standardize(
    cfg: &ExperimentConfig,
    rho: f64,
    n: usize,
    regime: RegimeTag,
    std: &Standardizer,
    raw: &[f64],
) -> SampleSet {
    sample_set(cfg, rho, n, regime, std.apply(raw, n))
}
