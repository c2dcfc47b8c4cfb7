//! Scalar fixed points of the large-(N,n) regime: γ_N(ρ), α(ρ) and δ.

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, HermitianEigen};

/// `(1/N) Σ_k λ_k / (ργ + (1−ρ) λ_k)`; strictly decreasing in γ.
pub fn gamma_trace(eigs: &[f64], rho: f64, gamma: f64) -> f64 {
    eigs.iter()
        .map(|&l| l / (rho * gamma + (1.0 - rho) * l))
        .sum::<f64>()
        / eigs.len() as f64
}

/// Solves `1 = (1/N) tr[Σ (ργ I + (1−ρ) Σ)⁻¹]` by bisection.
pub fn solve_gamma(sigma: &CMatrix, rho: f64, tol: f64) -> Result<f64> {
    gamma_from_eigenvalues(&HermitianEigen::new(sigma).values, rho, tol)
}

pub fn gamma_from_eigenvalues(eigs: &[f64], rho: f64, tol: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidArgument(format!("rho = {rho} outside (0, 1)")));
    }
    if eigs.is_empty() || eigs.iter().any(|&l| !(l > 0.0 && l.is_finite())) {
        return Err(Error::NoBracket);
    }
    let mean = eigs.iter().sum::<f64>() / eigs.len() as f64;
    let (mut lo, mut hi) = (1e-12, mean * 1e6);
    if !(gamma_trace(eigs, rho, lo) > 1.0 && gamma_trace(eigs, rho, hi) < 1.0) {
        return Err(Error::NoBracket);
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gamma_trace(eigs, rho, mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let gamma = 0.5 * (lo + hi);
    let residual = (gamma_trace(eigs, rho, gamma) - 1.0).abs();
    if residual > tol {
        return Err(Error::NonConvergence {
            what: "gamma bisection",
            iterations: 400,
            residual,
        });
    }
    Ok(gamma)
}

/// `α(ρ) = ργ(1 − (1−ρ)c) / (1−ρ)` with `c = N/n`.
pub fn compute_alpha(rho: f64, gamma: f64, c_ratio: f64) -> Result<f64> {
    if rho == 1.0 {
        return Err(Error::RhoOne);
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidArgument(format!("rho = {rho} outside (0, 1)")));
    }
    let factor = 1.0 - (1.0 - rho) * c_ratio;
    if factor <= 0.0 {
        return Err(Error::InvalidRegime { rho, c_ratio });
    }
    Ok(rho * gamma * factor / (1.0 - rho))
}

/// `(1/n) Σ_k λ_k / (λ_k/(1+δ) + α)`.
pub fn delta_map(eigs: &[f64], alpha: f64, n: usize, delta: f64) -> f64 {
    eigs.iter()
        .map(|&l| l / (l / (1.0 + delta) + alpha))
        .sum::<f64>()
        / n as f64
}

/// Solves `δ = (1/n) tr[Σ (Σ/(1+δ) + α I)⁻¹]` by damped Picard iteration
/// from `δ⁰ = N/n`.
pub fn solve_delta(sigma: &CMatrix, alpha: f64, n: usize, tol: f64) -> Result<f64> {
    delta_from_eigenvalues(&HermitianEigen::new(sigma).values, alpha, n, tol)
}

pub fn delta_from_eigenvalues(eigs: &[f64], alpha: f64, n: usize, tol: f64) -> Result<f64> {
    if !(alpha > 0.0) || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "need alpha > 0 and n >= 1, got alpha = {alpha}, n = {n}"
        )));
    }
    const DAMPING: f64 = 0.5;
    const MAX_ITER: usize = 100_000;
    let mut delta = eigs.len() as f64 / n as f64;
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITER {
        let mapped = delta_map(eigs, alpha, n, delta);
        residual = (mapped - delta).abs();
        if residual <= tol * delta.max(f64::MIN_POSITIVE) || residual == 0.0 {
            return Ok(mapped);
        }
        delta = (1.0 - DAMPING) * delta + DAMPING * mapped;
    }
    Err(Error::NonConvergence {
        what: "delta fixed point",
        iterations: MAX_ITER,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::identity;

    /// Positive root of `αδ² + (1 + α − c)δ − c = 0`, the `Σ = I` case.
    fn delta_identity_oracle(alpha: f64, c: f64) -> f64 {
        let b = 1.0 + alpha - c;
        // Positive root written without cancellation.
        2.0 * c / (b + (b * b + 4.0 * alpha * c).sqrt())
    }

    /// Plain bisection on the explicit 2×2 expression for `Σ = diag(1, 2)`, `ρ = 0.5`.
    fn gamma_diag12_oracle() -> f64 {
        let g = |x: f64| 0.5 * (1.0 / (0.5 * x + 0.5) + 2.0 / (0.5 * x + 1.0)) - 1.0;
        let (mut lo, mut hi) = (0.0, 100.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn gamma_scaled_identity() {
        for &s2 in &[0.5, 1.0, 7.0] {
            for &rho in &[0.1, 0.5, 0.9] {
                let g = solve_gamma(&identity(5).scale(s2), rho, 1e-12).unwrap();
                assert!((g - s2).abs() <= 1e-12 * s2, "s2={s2} rho={rho} g={g}");
            }
        }
    }

    #[test]
    fn gamma_diag_matches_oracle() {
        let g = gamma_from_eigenvalues(&[1.0, 2.0], 0.5, 1e-12).unwrap();
        assert!((g - gamma_diag12_oracle()).abs() < 1e-12);
        // clearing denominators leaves γ² = 2
        assert!((g - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn gamma_rejects_bad_inputs() {
        assert!(matches!(
            gamma_from_eigenvalues(&[1.0, -1.0], 0.5, 1e-10),
            Err(Error::NoBracket)
        ));
        assert!(gamma_from_eigenvalues(&[1.0], 1.0, 1e-10).is_err());
        assert!(gamma_from_eigenvalues(&[1.0], 0.0, 1e-10).is_err());
    }

    #[test]
    fn alpha_examples() {
        assert!((compute_alpha(0.5, 1.0, 0.04).unwrap() - 0.98).abs() < 1e-15);
        assert!((compute_alpha(0.5, 2.0, 0.0).unwrap() - 2.0).abs() < 1e-15);
        let a: Vec<f64> = [0.9, 0.99, 0.999]
            .iter()
            .map(|&r| compute_alpha(r, 1.0, 0.04).unwrap())
            .collect();
        assert!(a[0] < a[1] && a[1] < a[2] && a[2] > 900.0);
        assert!(matches!(compute_alpha(1.0, 1.0, 0.04), Err(Error::RhoOne)));
        assert!(matches!(
            compute_alpha(0.2, 1.0, 2.0),
            Err(Error::InvalidRegime { .. })
        ));
    }

    #[test]
    fn delta_identity_matches_quadratic() {
        for &(alpha, n_sensors, n) in &[(0.98, 4usize, 100usize), (2.0, 32, 64), (0.1, 8, 10)] {
            let d = solve_delta(&identity(n_sensors), alpha, n, 1e-14).unwrap();
            let c = n_sensors as f64 / n as f64;
            let oracle = delta_identity_oracle(alpha, c);
            assert!((d - oracle).abs() <= 1e-10 * oracle.max(1e-300), "{d} vs {oracle}");
        }
    }

    #[test]
    fn delta_large_alpha_limit() {
        let d = solve_delta(&identity(4), 1e6, 100, 1e-14).unwrap();
        let oracle = delta_identity_oracle(1e6, 0.04);
        assert!((d - oracle).abs() <= 1e-10 * oracle);
        assert!((d - 0.04 / 1e6).abs() < 1e-3 * 0.04 / 1e6);
    }
}
