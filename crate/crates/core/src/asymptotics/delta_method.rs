//! Large-n CLT of the output SNR: centre `SNR₀(ρ)` and delta-method variance
//! `σ_n² = c̃ᵗ Ξ c̃`.
//!
//! `vec` is column-major throughout, so `x* A y = x* (yᵗ ⊗ I) vec(A)`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{
    identity, kron_row, vec_col_major, CMatrix, CVector, HpdFactor, RMatrix, RVector,
};
use crate::rng::{self, domain};
use crate::rte::{solve_rte, RteOptions};
use crate::scenario::{build_covariance, Scenario, SnapshotSampler};

use super::sigma0::{solve_sigma0, Sigma0};

/// Monte Carlo budget for the covariance / pseudo-covariance of
/// `√n vec(Ĉ − Σ₀)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub n_cal: usize,
    pub n_reps: usize,
    pub seed: u64,
}

impl Default for Calibration {
    fn default() -> Self {
        Self {
            n_cal: 2000,
            n_reps: 400,
            seed: 0,
        }
    }
}

/// Empirical covariance `M̂₁ = (1/R) Σ y y*` and pseudo-covariance
/// `M̂₂ = (1/R) Σ y yᵗ` of `y = √n vec(Ĉ − Σ₀)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VecCovariances {
    pub m1: CMatrix,
    pub m2: CMatrix,
}

pub fn estimate_m1_m2(s: &Scenario, rho: f64, calib: Calibration) -> Result<VecCovariances> {
    let sigma = build_covariance(s);
    let sigma0 = if rho == 1.0 {
        identity(s.n_sensors)
    } else {
        solve_sigma0(&sigma, rho, 1e-12)?.matrix
    };
    estimate_m1_m2_with(s, &sigma0, rho, calib, RteOptions::default())
}

pub fn estimate_m1_m2_with(
    s: &Scenario,
    sigma0: &CMatrix,
    rho: f64,
    calib: Calibration,
    opts: RteOptions,
) -> Result<VecCovariances> {
    let dim = s.n_sensors;
    let k = dim * dim;
    if calib.n_reps < 10 * k {
        return Err(Error::InvalidArgument(format!(
            "need at least {} replications for N = {dim}, got {}",
            10 * k,
            calib.n_reps
        )));
    }
    let sampler = SnapshotSampler::new(s)?;
    let base = rng::derive(calib.seed, domain::CALIBRATION);
    let root_n = (calib.n_cal as f64).sqrt();
    let draws: Vec<CVector> = (0..calib.n_reps)
        .into_par_iter()
        .map(|r| {
            let batch = sampler.sample(calib.n_cal, rng::derive(base, r as u64));
            let est = solve_rte(&batch, rho, opts).map_err(|e| e.in_trial(r))?;
            Ok(vec_col_major(&(est.matrix - sigma0)) * Complex64::new(root_n, 0.0))
        })
        .collect::<Result<_>>()?;

    let mut m1 = CMatrix::zeros(k, k);
    let mut m2 = CMatrix::zeros(k, k);
    for y in &draws {
        m1 += y * y.adjoint();
        m2 += y * y.transpose();
    }
    let inv_r = Complex64::new(1.0 / calib.n_reps as f64, 0.0);
    Ok(VecCovariances {
        m1: m1 * inv_r,
        m2: m2 * inv_r,
    })
}

/// `Ξ = ½ [[Re M₁ + Re M₂, −Im M₁ + Im M₂], [Im M₁ + Im M₂, Re M₁ − Re M₂]]`,
/// the covariance of `[Re x; Im x]`.
pub fn assemble_xi(m1: &CMatrix, m2: &CMatrix) -> Result<RMatrix> {
    let k = m1.nrows();
    for m in [m1, m2] {
        if m.nrows() != k || m.ncols() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                actual: if m.nrows() != k { m.nrows() } else { m.ncols() },
            });
        }
    }
    let mut xi = RMatrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        for j in 0..k {
            let (a, b) = (m1[(i, j)], m2[(i, j)]);
            xi[(i, j)] = 0.5 * (a.re + b.re);
            xi[(i, j + k)] = 0.5 * (-a.im + b.im);
            xi[(i + k, j)] = 0.5 * (a.im + b.im);
            xi[(i + k, j + k)] = 0.5 * (a.re - b.re);
        }
    }
    Ok(xi)
}

/// Gradient of the SNR functional at `Σ₀`, stored as the column `c` whose
/// conjugate transpose `c*` is the row acting on `vec(Ĉ − Σ₀)`:
///
/// `c* = (a/b)² [s₀* B ((Σ₀⁻¹s₀)ᵗ ⊗ I) + s₀* Σ₀⁻¹ ((B s₀)ᵗ ⊗ I)]
///       − 2 (a/b) s₀* Σ₀⁻¹ ((Σ₀⁻¹s₀)ᵗ ⊗ I)`
///
/// with `B = Σ₀⁻¹ Σ Σ₀⁻¹`, `a = s₀* Σ₀⁻¹ s₀`, `b = s₀* B s₀`.
pub fn compute_c_vector(sigma: &CMatrix, sigma0: &CMatrix, s0: &CVector) -> Result<CVector> {
    let f = HpdFactor::new(sigma0)?;
    let g = f.solve(s0); // Σ₀⁻¹ s₀
    let bs = f.solve(&(sigma * &g)); // B s₀
    let a = s0.dotc(&g).re;
    let b = s0.dotc(&bs).re;
    if !(b > 0.0) {
        return Err(Error::SingularMatrix);
    }
    let ratio = a / b;
    let row = (kron_row(&bs, &g) + kron_row(&g, &bs)) * Complex64::new(ratio * ratio, 0.0)
        - kron_row(&g, &g) * Complex64::new(2.0 * ratio, 0.0);
    Ok(row.map(|z| z.conj()))
}

pub fn c_tilde(c: &CVector) -> RVector {
    let k = c.len();
    RVector::from_fn(2 * k, |i, _| if i < k { c[i].re } else { c[i - k].im })
}

/// Values of `c̃ᵗΞc̃` in `[−1e-8, 0)` are round-off and clamp to zero.
pub fn delta_method_sigma_n(c: &CVector, xi: &RMatrix) -> Result<f64> {
    let ct = c_tilde(c);
    if xi.nrows() != ct.len() || xi.ncols() != ct.len() {
        return Err(Error::DimensionMismatch {
            expected: ct.len(),
            actual: xi.nrows(),
        });
    }
    let var = ct.dot(&(xi * &ct));
    if var < -1e-8 {
        return Err(Error::NegativeVariance(var));
    }
    Ok(var.max(0.0).sqrt())
}

/// `SNR₀ = (s₀* Σ₀⁻¹ s₀)² / (s₀* B s₀)`.
pub fn snr0(sigma: &CMatrix, sigma0: &CMatrix, s0: &CVector) -> Result<f64> {
    let g = HpdFactor::new(sigma0)?.solve(s0);
    let a = s0.dotc(&g).re;
    let b = g.dotc(&(sigma * &g)).re;
    if !(b > 0.0) {
        return Err(Error::SingularMatrix);
    }
    Ok(a * a / b)
}

/// Everything needed to standardize `√n(ŜNR − SNR₀)` in the large-n regime.
#[derive(Debug, Clone)]
pub struct LargeNParams {
    pub sigma0: Sigma0,
    pub snr0: f64,
    pub b: CMatrix,
    pub c_vec: CVector,
    pub c_tilde: RVector,
    pub xi: RMatrix,
    pub covariances: VecCovariances,
    pub sigma_n: f64,
}

pub fn large_n_params(
    s: &Scenario,
    rho: f64,
    calib: Calibration,
    opts: RteOptions,
) -> Result<LargeNParams> {
    let sigma = build_covariance(s);
    let s0 = s.look_vector();
    let sig0 = solve_sigma0(&sigma, rho, 1e-12)?;
    let inv = HpdFactor::new(&sig0.matrix)?.inverse();
    let b = &inv * &sigma * &inv;
    let center = snr0(&sigma, &sig0.matrix, &s0)?;
    let c_vec = compute_c_vector(&sigma, &sig0.matrix, &s0)?;
    let covariances = estimate_m1_m2_with(s, &sig0.matrix, rho, calib, opts)?;
    let xi = assemble_xi(&covariances.m1, &covariances.m2)?;
    let sigma_n = delta_method_sigma_n(&c_vec, &xi)?;
    Ok(LargeNParams {
        sigma0: sig0,
        snr0: center,
        b,
        c_tilde: c_tilde(&c_vec),
        c_vec,
        xi,
        covariances,
        sigma_n,
    })
}
