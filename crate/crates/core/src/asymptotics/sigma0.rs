//! Large-n limit `Σ₀(ρ)` of the regularized Tyler estimator:
//! `Σ₀ = N(1−ρ) E[x x* / (x* Σ₀⁻¹ x)] + ρ I`.
//!
//! `Σ₀` shares its eigenvectors with `Σ_N`, so with `Σ_N = U diag(λ) U*` and
//! `Σ₀ = U diag(d) U*` the expectation reduces to
//! `d_k = N(1−ρ) λ_k E_k + ρ`, where for `a_j = λ_j / d_j`
//! `E_k = E[|w_k|² / Σ_j a_j |w_j|²] = ∫₀^∞ (1 + t a_k)⁻² Π_{j≠k} (1 + t a_j)⁻¹ dt`.
//! The texture cancels from the ratio, so only the Gaussian part matters.

use crate::error::{Error, Result};
use crate::linalg::{with_spectrum, CMatrix, HermitianEigen};
use crate::quadrature::{integrate_half_line, QuadOptions};

#[derive(Debug, Clone)]
pub struct Sigma0 {
    pub matrix: CMatrix,
    /// Eigenvalues `d` of `Σ₀`, paired with `sigma_eigen.values`.
    pub eigenvalues: Vec<f64>,
    pub sigma_eigen: HermitianEigen,
    pub rho: f64,
    pub iterations: usize,
}

/// `E[|w_k|² / Σ_j a_j |w_j|²]` for i.i.d. standard complex Gaussian `w`.
pub fn gaussian_ratio_moments(a: &[f64]) -> Result<Vec<f64>> {
    (0..a.len())
        .map(|k| {
            integrate_half_line(
                |t| {
                    let mut v = 1.0 / (1.0 + t * a[k]);
                    for &aj in a {
                        v /= 1.0 + t * aj;
                    }
                    v
                },
                QuadOptions::default(),
            )
        })
        .collect()
}

/// `E[x x* / (x* Σ₀⁻¹ x)]` for `x ~ CN(0, Σ)` given the shared eigenbasis.
pub fn ratio_expectation(sigma_eigen: &HermitianEigen, d: &[f64]) -> Result<CMatrix> {
    let lambda = &sigma_eigen.values;
    let a: Vec<f64> = lambda.iter().zip(d).map(|(l, d)| l / d).collect();
    let moments = gaussian_ratio_moments(&a)?;
    let diag: Vec<f64> = lambda.iter().zip(&moments).map(|(l, m)| l * m).collect();
    Ok(with_spectrum(&sigma_eigen.vectors, &diag))
}

pub fn solve_sigma0(sigma: &CMatrix, rho: f64, tol: f64) -> Result<Sigma0> {
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(Error::InvalidArgument(format!("rho = {rho} outside (0, 1]")));
    }
    let eig = HermitianEigen::new(sigma);
    if !(eig.min() > 0.0) {
        return Err(Error::SingularMatrix);
    }
    let n = eig.values.len();
    let lambda = eig.values.clone();
    let mut d = vec![1.0; n];
    const MAX_ITER: usize = 20_000;
    let mut residual = f64::INFINITY;
    for iter in 1..=MAX_ITER {
        let a: Vec<f64> = lambda.iter().zip(&d).map(|(l, d)| l / d).collect();
        let moments = gaussian_ratio_moments(&a)?;
        let next: Vec<f64> = lambda
            .iter()
            .zip(&moments)
            .map(|(l, m)| n as f64 * (1.0 - rho) * l * m + rho)
            .collect();
        let scale = next.iter().fold(0.0_f64, |m, &v| m.max(v));
        residual = next
            .iter()
            .zip(&d)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
            / scale;
        d = next;
        if residual <= tol {
            return Ok(Sigma0 {
                matrix: with_spectrum(&eig.vectors, &d),
                eigenvalues: d,
                sigma_eigen: eig,
                rho,
                iterations: iter,
            });
        }
    }
    Err(Error::NonConvergence {
        what: "sigma0 eigenvalue fixed point",
        iterations: MAX_ITER,
        residual,
    })
}
