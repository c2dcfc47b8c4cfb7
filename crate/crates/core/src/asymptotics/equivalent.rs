//! Gaussian-equivalent diagonally loaded model of the large-(N,n) regime.
//!
//! For quadratic forms, `Ĉ_N(ρ)` behaves like `(ρ/α) (1/n) Σ z_i z_i* + ρI`
//! with `z_i = Σ^{1/2} w_i`; since the SNR is scale invariant the loaded
//! sample covariance `S̃ = (1/n) Σ z_i z_i* + α I` produces the same SNR
//! fluctuations. The centre and spread of those fluctuations are estimated
//! here by Monte Carlo over `S̃`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_part, CMatrix, HermitianEigen};
use crate::mvdr::output_snr;
use crate::rng::{self, domain};
use crate::scenario::{build_covariance, Scenario, SnapshotSampler, TextureLaw};

use super::fixed_point::{compute_alpha, delta_from_eigenvalues, gamma_from_eigenvalues};

/// `(1/n) Z Z* + α I` for the columns `z_i` of `z`.
pub fn s_tilde_from_gaussian_part(z: &CMatrix, alpha: f64) -> CMatrix {
    let (dim, n) = z.shape();
    let mut s = (z * z.adjoint()) * Complex64::new(1.0 / n as f64, 0.0);
    for k in 0..dim {
        s[(k, k)] += alpha;
    }
    hermitian_part(&s)
}

/// One draw of `S̃_N(ρ)`. The Gaussian vectors are the ones
/// [`SnapshotSampler::sample`] would draw for the same seed.
pub fn gaussian_equivalent_s_tilde(
    sigma: &CMatrix,
    alpha: f64,
    n: usize,
    seed: u64,
) -> Result<CMatrix> {
    if !(alpha > 0.0) || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "need alpha > 0 and n >= 1, got alpha = {alpha}, n = {n}"
        )));
    }
    let sampler = SnapshotSampler::from_covariance(sigma, TextureLaw::Constant);
    Ok(s_tilde_from_gaussian_part(&sampler.gaussian_part(n, seed), alpha))
}

/// Mean and spread of `SNR(S̃)` over independent draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenterScale {
    /// Mean SNR: stand-in for the deterministic centring `SNR̄(ρ)`.
    pub center: f64,
    /// Standard deviation of the SNR itself.
    pub spread: f64,
    /// `√n · spread`, the stand-in for `σ_{N,n}`.
    pub scale: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeNnParams {
    pub gamma: f64,
    pub delta: f64,
    pub alpha: f64,
    pub c_ratio: f64,
    pub center: f64,
    pub scale: f64,
}

pub fn loading_factor(eigs: &[f64], rho: f64, n: usize) -> Result<f64> {
    let c_ratio = eigs.len() as f64 / n as f64;
    if rho == 1.0 {
        return Err(Error::RhoOne);
    }
    let gamma = gamma_from_eigenvalues(eigs, rho, 1e-10)?;
    compute_alpha(rho, gamma, c_ratio)
}

pub fn large_nn_center_scale(
    s: &Scenario,
    rho: f64,
    n: usize,
    n_trials: usize,
    seed: u64,
) -> Result<CenterScale> {
    if n_trials < 2 {
        return Err(Error::InvalidArgument("need at least two trials".into()));
    }
    let sigma = build_covariance(s);
    let eigs = HermitianEigen::new(&sigma).values;
    let alpha = loading_factor(&eigs, rho, n)?;
    let s0 = s.look_vector();
    let sampler = SnapshotSampler::from_covariance(&sigma, TextureLaw::Constant);
    let base = rng::derive(seed, domain::SURROGATE);
    let snrs: Vec<f64> = (0..n_trials)
        .into_par_iter()
        .map(|t| {
            let z = sampler.gaussian_part(n, rng::derive(base, t as u64));
            output_snr(&s_tilde_from_gaussian_part(&z, alpha), &sigma, &s0)
                .map_err(|e| e.in_trial(t))
        })
        .collect::<Result<_>>()?;
    let (center, var) = mean_var(&snrs);
    let spread = var.sqrt();
    Ok(CenterScale {
        center,
        spread,
        scale: (n as f64).sqrt() * spread,
    })
}

pub fn large_nn_params(
    s: &Scenario,
    rho: f64,
    n: usize,
    n_trials: usize,
    seed: u64,
) -> Result<LargeNnParams> {
    if rho == 1.0 {
        return Err(Error::RhoOne);
    }
    let sigma = build_covariance(s);
    let eigs = HermitianEigen::new(&sigma).values;
    let c_ratio = s.n_sensors as f64 / n as f64;
    let gamma = gamma_from_eigenvalues(&eigs, rho, 1e-10)?;
    let alpha = compute_alpha(rho, gamma, c_ratio)?;
    let delta = delta_from_eigenvalues(&eigs, alpha, n, 1e-12)?;
    let cs = large_nn_center_scale(s, rho, n, n_trials, seed)?;
    Ok(LargeNnParams {
        gamma,
        delta,
        alpha,
        c_ratio,
        center: cs.center,
        scale: cs.scale,
    })
}

/// Mean and unbiased variance, accumulated in index order.
pub(crate) fn mean_var(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}
